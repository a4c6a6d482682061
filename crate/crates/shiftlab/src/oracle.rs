//! Brute-force ground truth: enumerate admissible words, cylinder counts,
//! and periodic points directly from system definitions by depth-first
//! search, independent of the spectral formulas they are used to check.
//!
//! All counts are exact big integers and all ratios exact rationals, so the
//! oracle shares no rounding with the code under test.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cell::Cell;

use crate::error::{Result, ShiftError};
use crate::matrix::{big_ratio, Alphabet, Symbol, Word};

/// Incremental admissibility state carried along a DFS branch.
#[derive(Debug, Clone)]
pub enum WalkState {
    /// Nothing read yet.
    Start,
    /// Bitmask of possible automaton states (SFT terminal vertex, or the
    /// subset of sofic vertices reachable reading the prefix).
    Subset(u64),
    /// The full prefix, for systems whose constraints are word predicates.
    Context(Vec<Symbol>),
}

/// A shift space queried through its language, one symbol at a time.
pub trait ShiftLanguage {
    fn alphabet(&self) -> &Alphabet;

    fn start(&self) -> WalkState {
        WalkState::Start
    }

    /// Extend an admissible prefix by one symbol; `None` if the extension
    /// is not admissible.
    fn step(&self, state: &WalkState, s: Symbol) -> Option<WalkState>;

    /// Whether the bi-infinite repetition of `w` lies in the shift.
    /// `w` itself is assumed admissible.
    fn periodic_admissible(&self, w: &[Symbol]) -> Result<bool>;

    /// Longest total word length this system can enumerate soundly
    /// (`None` = unbounded). Systems given by a truncated forbidden family
    /// refuse longer queries rather than return wrong counts.
    fn sound_horizon(&self) -> Option<usize> {
        None
    }
}

const DEFAULT_MAX_WORK: u64 = 100_000_000;

/// Step budget for a single oracle query. Reads SHIFTLAB_MAX_WORK.
pub struct WorkGuard {
    limit: u64,
    used: Cell<u64>,
}

impl WorkGuard {
    pub fn new() -> Self {
        let limit = std::env::var("SHIFTLAB_MAX_WORK")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MAX_WORK);
        WorkGuard { limit, used: Cell::new(0) }
    }

    pub fn with_limit(limit: u64) -> Self {
        WorkGuard { limit, used: Cell::new(0) }
    }

    fn tick(&self) -> Result<()> {
        let u = self.used.get() + 1;
        self.used.set(u);
        if u > self.limit {
            Err(ShiftError::WorkLimit(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }
}

impl Default for WorkGuard {
    fn default() -> Self {
        WorkGuard::new()
    }
}

fn check_horizon(sys: &dyn ShiftLanguage, total_len: usize) -> Result<()> {
    if let Some(h) = sys.sound_horizon() {
        if total_len > h {
            return Err(ShiftError::Refused(format!(
                "enumeration of length {total_len} exceeds the declared forbidden-set horizon {h}"
            )));
        }
    }
    Ok(())
}

/// DFS over admissible words of length `n`. `forced[t]` pins position `t`.
/// `visit` is called once per admissible full-length word.
fn dfs(
    sys: &dyn ShiftLanguage,
    n: usize,
    forced: &[Option<Symbol>],
    guard: &WorkGuard,
    visit: &mut dyn FnMut(&[Symbol]) -> Result<()>,
) -> Result<()> {
    let k = sys.alphabet().size();
    let mut prefix: Vec<Symbol> = Vec::with_capacity(n);
    let mut states: Vec<WalkState> = vec![sys.start()];
    // Iterative DFS: choice[t] = next symbol index to try at depth t.
    let mut choice: Vec<usize> = vec![0];
    while let Some(&c) = choice.last() {
        let depth = choice.len() - 1;
        if depth == n {
            visit(&prefix)?;
            choice.pop();
            prefix.pop();
            states.pop();
            if let Some(c) = choice.last_mut() {
                *c += 1;
            }
            continue;
        }
        let mut advanced = false;
        for si in c..k {
            guard.tick()?;
            let sym = Symbol(si);
            if let Some(f) = forced[depth] {
                if sym != f {
                    continue;
                }
            }
            if let Some(next) = sys.step(states.last().unwrap(), sym) {
                *choice.last_mut().unwrap() = si;
                prefix.push(sym);
                states.push(next);
                choice.push(0);
                advanced = true;
                break;
            }
        }
        if !advanced {
            choice.pop();
            prefix.pop();
            states.pop();
            if let Some(c) = choice.last_mut() {
                *c += 1;
            }
        }
    }
    Ok(())
}

/// All admissible words of length `n`, lexicographically sorted.
pub fn enumerate_words(sys: &dyn ShiftLanguage, n: usize, guard: &WorkGuard) -> Result<Vec<Word>> {
    if n == 0 {
        return Err(ShiftError::Invalid("word length must be at least 1".into()));
    }
    check_horizon(sys, n)?;
    let forced = vec![None; n];
    let mut out = Vec::new();
    dfs(sys, n, &forced, guard, &mut |w| {
        out.push(Word::new(w.to_vec())?);
        Ok(())
    })?;
    Ok(out)
}

/// |B_n|: number of admissible words of length n.
pub fn census(sys: &dyn ShiftLanguage, n: usize, guard: &WorkGuard) -> Result<BigUint> {
    if n == 0 {
        return Err(ShiftError::Invalid("word length must be at least 1".into()));
    }
    check_horizon(sys, n)?;
    let forced = vec![None; n];
    let mut count = BigUint::zero();
    dfs(sys, n, &forced, guard, &mut |_| {
        count += BigUint::one();
        Ok(())
    })?;
    Ok(count)
}

/// |C_{k,l}(w)|: admissible words of length k+n+l carrying `w` at offset k.
pub fn count_cylinder(
    sys: &dyn ShiftLanguage,
    word: &Word,
    k: usize,
    l: usize,
    guard: &WorkGuard,
) -> Result<BigUint> {
    let n = word.len();
    let total = k + n + l;
    check_horizon(sys, total)?;
    let mut forced: Vec<Option<Symbol>> = vec![None; total];
    for (t, &s) in word.symbols().iter().enumerate() {
        forced[k + t] = Some(s);
    }
    let mut count = BigUint::zero();
    dfs(sys, total, &forced, guard, &mut |_| {
        count += BigUint::one();
        Ok(())
    })?;
    Ok(count)
}

/// Number of points of (not necessarily least) period `n`: admissible
/// n-words whose infinite repetition lies in the shift.
pub fn count_periodic(sys: &dyn ShiftLanguage, n: usize, guard: &WorkGuard) -> Result<BigUint> {
    if n == 0 {
        return Err(ShiftError::Invalid("period must be at least 1".into()));
    }
    check_horizon(sys, n)?;
    let forced = vec![None; n];
    let mut count = BigUint::zero();
    let mut err: Option<ShiftError> = None;
    dfs(sys, n, &forced, guard, &mut |w| {
        match sys.periodic_admissible(w) {
            Ok(true) => count += BigUint::one(),
            Ok(false) => {}
            Err(e) => {
                if err.is_none() {
                    err = Some(e);
                }
            }
        }
        Ok(())
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(count)
}

/// Exact empirical ratio |C_{k,l}(w)| / |B_{n+k+l}|.
pub fn cylinder_ratio(
    sys: &dyn ShiftLanguage,
    word: &Word,
    k: usize,
    l: usize,
    guard: &WorkGuard,
) -> Result<BigRational> {
    let num = count_cylinder(sys, word, k, l, guard)?;
    let den = census(sys, word.len() + k + l, guard)?;
    big_ratio(num, den)
}

/// The empirical limit diagnostic over a grid of windows.
pub fn ratio_series(
    sys: &dyn ShiftLanguage,
    word: &Word,
    grid: &[(usize, usize)],
    guard: &WorkGuard,
) -> Result<Vec<(usize, usize, BigRational)>> {
    grid.iter()
        .map(|&(k, l)| Ok((k, l, cylinder_ratio(sys, word, k, l, guard)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    /// Full shift on `m` symbols: every word admissible.
    struct Full(Alphabet);

    impl ShiftLanguage for Full {
        fn alphabet(&self) -> &Alphabet {
            &self.0
        }
        fn step(&self, _: &WalkState, _: Symbol) -> Option<WalkState> {
            Some(WalkState::Start)
        }
        fn periodic_admissible(&self, _: &[Symbol]) -> Result<bool> {
            Ok(true)
        }
    }

    #[test]
    fn full_shift_counts() {
        let sys = Full(Alphabet::numeric(2));
        let g = WorkGuard::with_limit(1_000_000);
        assert_eq!(census(&sys, 2, &g).unwrap(), BigUint::from(4u32));
        assert_eq!(count_periodic(&sys, 3, &g).unwrap(), BigUint::from(8u32));
        let w = sys.0.parse_word("1,2").unwrap();
        // Free margins: 4 words of length 4 with the window fixed.
        assert_eq!(count_cylinder(&sys, &w, 1, 1, &g).unwrap(), BigUint::from(4u32));
        let r = cylinder_ratio(&sys, &w, 1, 1, &g).unwrap();
        assert_eq!(r.to_f64().unwrap(), 0.25);
    }

    #[test]
    fn work_guard_trips() {
        let sys = Full(Alphabet::numeric(2));
        let g = WorkGuard::with_limit(10);
        assert!(matches!(census(&sys, 20, &g), Err(ShiftError::WorkLimit(10))));
    }
}
