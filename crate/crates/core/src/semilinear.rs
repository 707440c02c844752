//! Arithmetic progressions `a + bN`, finite unions of them, canonical
//! eventually periodic sets, and the numerical-semigroup decomposition of
//! the set of coin-representable numbers.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Default ceiling on the common period when comparing progression sets.
pub const DEFAULT_LCM_CEILING: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemilinearError {
    #[error("period lcm exceeds the ceiling {ceiling}")]
    LcmTooLarge { ceiling: u64 },
    #[error("coin list is empty")]
    NoCoins,
    #[error("coins must be strictly increasing and positive")]
    BadCoins,
    #[error("coin {coin} exceeds n = {n}")]
    CoinTooLarge { coin: u64, n: u64 },
    #[error("period must be positive")]
    ZeroPeriod,
    #[error("value {value} out of range for threshold {threshold} / period {period}")]
    OutOfRange {
        value: u64,
        threshold: u64,
        period: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ProgressionParseError {
    pub line: usize,
    pub message: String,
}

/// `{offset + period * k : k in N}`; period 0 is the singleton `{offset}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArithmeticProgression {
    pub offset: u64,
    pub period: u64,
}

impl ArithmeticProgression {
    pub fn new(offset: u64, period: u64) -> Self {
        ArithmeticProgression { offset, period }
    }

    pub fn singleton(offset: u64) -> Self {
        ArithmeticProgression { offset, period: 0 }
    }

    pub fn is_singleton(&self) -> bool {
        self.period == 0
    }

    pub fn contains(&self, x: u64) -> bool {
        match self.period {
            0 => x == self.offset,
            b => x >= self.offset && (x - self.offset).is_multiple_of(b),
        }
    }

    /// Whether every element of `other` is an element of `self`.
    pub fn covers(&self, other: &ArithmeticProgression) -> bool {
        if !self.contains(other.offset) {
            return false;
        }
        other.period == 0 || (self.period != 0 && other.period.is_multiple_of(self.period))
    }
}

impl fmt::Display for ArithmeticProgression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.period {
            0 => write!(f, "{}", self.offset),
            b => write!(f, "{}+{}N", self.offset, b),
        }
    }
}

impl FromStr for ArithmeticProgression {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = |t: &str| -> Result<u64, String> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(format!("`{s}` is not a progression"));
            }
            t.parse().map_err(|_| format!("`{t}` is out of range"))
        };
        match s.split_once('+') {
            None => Ok(ArithmeticProgression::singleton(digits(s)?)),
            Some((a, rest)) => {
                let b = rest
                    .strip_suffix('N')
                    .ok_or_else(|| format!("`{s}` is not a progression"))?;
                let period = digits(b)?;
                if period == 0 {
                    return Err(format!("`{s}` has period 0; write `{a}` instead"));
                }
                Ok(ArithmeticProgression::new(digits(a)?, period))
            }
        }
    }
}

impl Serialize for ArithmeticProgression {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A finite union of arithmetic progressions, kept sorted by
/// `(offset, period)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ProgressionSet {
    progressions: BTreeSet<ArithmeticProgression>,
}

impl ProgressionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: ArithmeticProgression) -> bool {
        self.progressions.insert(p)
    }

    pub fn remove(&mut self, p: &ArithmeticProgression) -> bool {
        self.progressions.remove(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ArithmeticProgression> + '_ {
        self.progressions.iter()
    }

    pub fn len(&self) -> usize {
        self.progressions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.progressions.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.progressions.iter().any(|p| p.contains(x))
    }

    pub fn max_offset(&self) -> Option<u64> {
        self.progressions.iter().map(|p| p.offset).max()
    }

    /// Drops every progression `(a + kb, b)` with `k >= 1` that is covered
    /// by `(a, b)` of the same period. The denoted set is unchanged.
    pub fn prune_same_period(&mut self) {
        let mut kept: Vec<ArithmeticProgression> = Vec::new();
        for p in &self.progressions {
            let covered = p.period != 0 && kept.iter().any(|q| q.period == p.period && q.covers(p));
            if !covered {
                kept.push(*p);
            }
        }
        self.progressions = kept.into_iter().collect();
    }

    pub fn parse(text: &str) -> Result<Self, ProgressionParseError> {
        text.parse()
    }
}

impl FromIterator<ArithmeticProgression> for ProgressionSet {
    fn from_iter<I: IntoIterator<Item = ArithmeticProgression>>(iter: I) -> Self {
        ProgressionSet {
            progressions: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a ProgressionSet {
    type Item = &'a ArithmeticProgression;
    type IntoIter = std::collections::btree_set::Iter<'a, ArithmeticProgression>;

    fn into_iter(self) -> Self::IntoIter {
        self.progressions.iter()
    }
}

impl fmt::Display for ProgressionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.progressions {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for ProgressionSet {
    type Err = ProgressionParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut set = ProgressionSet::new();
        for (i, raw) in text.lines().enumerate() {
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let p = content.parse().map_err(|message| ProgressionParseError {
                line: i + 1,
                message,
            })?;
            set.insert(p);
        }
        Ok(set)
    }
}

/// A set of naturals of the form `sporadic ∪ {x >= threshold : x mod period
/// ∈ residues}`, always held in canonical form: the period is minimal, and
/// the threshold is minimal for that period. Two values are equal iff they
/// denote the same set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EventuallyPeriodicSet {
    threshold: u64,
    period: u64,
    sporadic: BTreeSet<u64>,
    residues: BTreeSet<u64>,
}

impl EventuallyPeriodicSet {
    pub fn empty() -> Self {
        EventuallyPeriodicSet {
            threshold: 0,
            period: 1,
            sporadic: BTreeSet::new(),
            residues: BTreeSet::new(),
        }
    }

    /// Builds and canonicalizes. Sporadic values must lie below the
    /// threshold and residues below the period.
    pub fn new(
        threshold: u64,
        period: u64,
        sporadic: impl IntoIterator<Item = u64>,
        residues: impl IntoIterator<Item = u64>,
    ) -> Result<Self, SemilinearError> {
        if period == 0 {
            return Err(SemilinearError::ZeroPeriod);
        }
        let out_of_range = |value| SemilinearError::OutOfRange {
            value,
            threshold,
            period,
        };
        let mut window = vec![false; (threshold + period) as usize];
        for x in sporadic {
            if x >= threshold {
                return Err(out_of_range(x));
            }
            window[x as usize] = true;
        }
        for r in residues {
            if r >= period {
                return Err(out_of_range(r));
            }
            let first = threshold + (r + period - threshold % period) % period;
            window[first as usize] = true;
        }
        Ok(Self::from_window(threshold, period, window))
    }

    /// `window[x]` gives membership for `x < threshold + period`; beyond
    /// that the set repeats with `period`.
    pub(crate) fn from_window(threshold: u64, period: u64, window: Vec<bool>) -> Self {
        debug_assert_eq!(window.len() as u64, threshold + period);
        let member = |x: u64| -> bool {
            if x < threshold + period {
                window[x as usize]
            } else {
                window[(threshold + (x - threshold) % period) as usize]
            }
        };
        let p = divisors(period)
            .into_iter()
            .find(|&p| (threshold..threshold + period).all(|x| member(x) == member(x + p)))
            .expect("the period itself always qualifies");
        let mut t = threshold;
        while t > 0 && member(t - 1) == member(t - 1 + p) {
            t -= 1;
        }
        EventuallyPeriodicSet {
            threshold: t,
            period: p,
            sporadic: (0..t).filter(|&x| member(x)).collect(),
            residues: (t..t + p).filter(|&x| member(x)).map(|x| x % p).collect(),
        }
    }

    pub fn from_progressions(ps: &ProgressionSet) -> Result<Self, SemilinearError> {
        Self::from_progressions_with_ceiling(ps, DEFAULT_LCM_CEILING)
    }

    /// Exact conversion: the common period is the lcm of all nonzero
    /// periods, the initial threshold one past the largest offset.
    pub fn from_progressions_with_ceiling(
        ps: &ProgressionSet,
        ceiling: u64,
    ) -> Result<Self, SemilinearError> {
        let mut period = 1u64;
        for p in ps.iter().filter(|p| p.period > 0) {
            period = period.lcm(&p.period);
            if period > ceiling {
                return Err(SemilinearError::LcmTooLarge { ceiling });
            }
        }
        let threshold = ps.max_offset().map_or(0, |m| m + 1);
        let len = threshold + period;
        let mut window = vec![false; len as usize];
        for p in ps {
            if p.period == 0 {
                window[p.offset as usize] = true;
            } else {
                let mut x = p.offset;
                while x < len {
                    window[x as usize] = true;
                    x += p.period;
                }
            }
        }
        Ok(Self::from_window(threshold, period, window))
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn sporadic(&self) -> &BTreeSet<u64> {
        &self.sporadic
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn contains(&self, x: u64) -> bool {
        if x < self.threshold {
            self.sporadic.contains(&x)
        } else {
            self.residues.contains(&(x % self.period))
        }
    }

    pub fn is_empty(&self) -> bool {
        self.sporadic.is_empty() && self.residues.is_empty()
    }

    /// The smallest number in exactly one of the two sets.
    pub fn first_difference(&self, other: &Self) -> Option<u64> {
        let horizon = self.threshold.max(other.threshold) + self.period.lcm(&other.period);
        (0..horizon).find(|&x| self.contains(x) != other.contains(x))
    }

    /// A progression set denoting the same set: one singleton per sporadic
    /// element, one progression per residue.
    pub fn to_progressions(&self) -> ProgressionSet {
        let sporadic = self
            .sporadic
            .iter()
            .map(|&x| ArithmeticProgression::singleton(x));
        let periodic = (self.threshold..self.threshold + self.period)
            .filter(|&x| self.contains(x))
            .map(|x| ArithmeticProgression::new(x, self.period));
        sporadic.chain(periodic).collect()
    }
}

impl fmt::Display for EventuallyPeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<u64>| s.iter().map(|x| format!(" {x}")).collect::<String>();
        writeln!(f, "threshold {}", self.threshold)?;
        writeln!(f, "period {}", self.period)?;
        writeln!(f, "sporadic{}", join(&self.sporadic))?;
        writeln!(f, "residues{}", join(&self.residues))
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The set of numbers representable by coins `a_1 < .. < a_k <= n`, split as
/// `sporadic ∪ (tail_offset + gcd N)` with every sporadic value `<= n²` and
/// `tail_offset` the least multiple of `gcd` above `n²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupDecomposition {
    pub n: u64,
    pub sporadic: BTreeSet<u64>,
    pub tail_offset: u64,
    pub gcd: u64,
}

impl SemigroupDecomposition {
    pub fn contains(&self, x: u64) -> bool {
        if x <= self.n * self.n {
            self.sporadic.contains(&x)
        } else {
            x >= self.tail_offset && (x - self.tail_offset).is_multiple_of(self.gcd)
        }
    }
}

pub fn numerical_semigroup_decompose(
    coins: &[u64],
    n: u64,
) -> Result<SemigroupDecomposition, SemilinearError> {
    if coins.is_empty() {
        return Err(SemilinearError::NoCoins);
    }
    if coins[0] == 0 || coins.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SemilinearError::BadCoins);
    }
    if let Some(&coin) = coins.iter().find(|&&c| c > n) {
        return Err(SemilinearError::CoinTooLarge { coin, n });
    }
    let square = n * n;
    let gcd = coins.iter().fold(0u64, |g, c| g.gcd(c));
    let table = representable_dp(coins, square);
    Ok(SemigroupDecomposition {
        n,
        sporadic: (0..=square).filter(|&x| table[x as usize]).collect(),
        tail_offset: (square / gcd + 1) * gcd,
        gcd,
    })
}

/// `table[x]` is true iff `x` is a nonnegative integer combination of
/// `coins`, for `x <= bound`.
pub fn representable_dp(coins: &[u64], bound: u64) -> Vec<bool> {
    let mut table = vec![false; bound as usize + 1];
    table[0] = true;
    for x in 1..=bound {
        table[x as usize] = coins
            .iter()
            .any(|&c| c > 0 && c <= x && table[(x - c) as usize]);
    }
    table
}
