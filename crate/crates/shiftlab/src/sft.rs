//! Shifts of finite type given by a 0-1 transition matrix: censuses,
//! Parry measure, natural-measure limits (including periodic and reducible
//! matrices), entropy, and orbit sampling.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, ShiftError};
use crate::matrix::{
    big_ratio, ratio_to_f64, Alphabet, MeasureMethod, MeasureResult, NonnegMatrix, Symbol, Word,
};
use crate::oracle::{ShiftLanguage, WalkState};
use crate::spectral::{
    self, block_triangularize, is_irreducible, perron, stochasticize,
    SpectralData,
};

#[derive(Debug, Clone)]
pub struct SftShift {
    matrix: NonnegMatrix,
    alphabet: Alphabet,
}

impl SftShift {
    pub fn new(matrix: NonnegMatrix, alphabet: Alphabet) -> Result<Self> {
        if matrix.dim() != alphabet.size() {
            return Err(ShiftError::Invalid(format!(
                "matrix dimension {} != alphabet size {}",
                matrix.dim(),
                alphabet.size()
            )));
        }
        if !matrix.is_zero_one() {
            return Err(ShiftError::Invalid("transition matrix entries must be 0 or 1".into()));
        }
        if matrix.dim() > 64 {
            return Err(ShiftError::Invalid("at most 64 symbols supported".into()));
        }
        Ok(SftShift { matrix, alphabet })
    }

    /// Full shift on n symbols.
    pub fn full(n: usize) -> Self {
        let mut m = NonnegMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, BigUint::one());
            }
        }
        SftShift { matrix: m, alphabet: Alphabet::numeric(n) }
    }

    pub fn matrix(&self) -> &NonnegMatrix {
        &self.matrix
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn spectral(&self, tol: f64) -> Result<SpectralData> {
        perron(&self.matrix, tol)
    }

    pub fn is_irreducible(&self) -> bool {
        is_irreducible(&self.matrix)
    }

    fn edge(&self, a: Symbol, b: Symbol) -> bool {
        !self.matrix.get(a.0, b.0).is_zero()
    }

    pub fn is_admissible(&self, w: &Word) -> bool {
        w.symbols().windows(2).all(|p| self.edge(p[0], p[1]))
    }

    /// |B_n| = sum of entries of A^{n-1}.
    pub fn word_count(&self, n: usize) -> Result<BigUint> {
        if n == 0 {
            return Err(ShiftError::Invalid("length must be at least 1".into()));
        }
        Ok(self.matrix.pow(n - 1).entry_sum())
    }

    /// |P_n| = tr(A^n).
    pub fn periodic_count(&self, n: usize) -> Result<BigUint> {
        if n == 0 {
            return Err(ShiftError::Invalid("period must be at least 1".into()));
        }
        Ok(self.matrix.pow(n).trace())
    }

    /// |C_{k,l}(w)| = (col sum of A^k at i₁) · (row sum of A^l at iₙ) for an
    /// admissible word, 0 otherwise.
    pub fn cylinder_count(&self, w: &Word, k: usize, l: usize) -> BigUint {
        if !self.is_admissible(w) {
            return BigUint::zero();
        }
        let left = self.matrix.pow(k).col_sums().swap_remove(w.first().0);
        let right = self.matrix.pow(l).row_sums().swap_remove(w.last().0);
        left * right
    }

    /// Exact |C_{k,l}(w)| / |B_{n+k+l}|.
    pub fn natural_measure_ratio(&self, w: &Word, k: usize, l: usize) -> Result<BigRational> {
        big_ratio(self.cylinder_count(w, k, l), self.word_count(w.len() + k + l)?)
    }

    /// μ(w) = u_{i₁} v_{iₙ} / λ^{n-1} for admissible w.
    pub fn parry_measure(&self, w: &Word, tol: f64) -> Result<MeasureResult> {
        let s = self.spectral(tol)?;
        if !self.is_admissible(w) {
            return Ok(MeasureResult::inadmissible(MeasureMethod::ClosedForm));
        }
        let v = s.left[w.first().0] * s.right[w.last().0] / s.lambda.powi(w.len() as i32 - 1);
        Ok(MeasureResult::closed(v))
    }

    /// Average over the window shifts (k-j, l+j), j = 0..p-1, of the exact
    /// cylinder ratios — the finite-window value of the defining limit.
    pub fn averaged_ratio(&self, w: &Word, k: usize, l: usize, p: usize) -> Result<BigRational> {
        if k + 1 < p {
            return Err(ShiftError::Invalid("left window too small for the period average".into()));
        }
        let den = self.word_count(w.len() + k + l)?;
        let num: BigUint = (0..p).map(|j| self.cylinder_count(w, k - j, l + j)).sum();
        let r = big_ratio(num, den)?;
        Ok(r / BigRational::from_integer(p.into()))
    }

    /// Natural measure as a window limit with period averaging, checked
    /// against the Parry value.
    pub fn natural_measure(&self, w: &Word, tol: f64, max_window: usize) -> Result<MeasureResult> {
        if !self.is_irreducible() {
            return self.reducible_natural_measure(w, tol);
        }
        if !self.is_admissible(w) {
            return Ok(MeasureResult::inadmissible(MeasureMethod::Limit));
        }
        let p = spectral::period(&self.matrix)?;
        let mut diagnostics = Vec::new();
        let mut prev: Option<f64> = None;
        let mut window = 8usize.max(p);
        let mut converged = None;
        while window <= max_window {
            let val = ratio_to_f64(&self.averaged_ratio(w, window, window, p)?);
            diagnostics.push((window, window, val));
            if let Some(pv) = prev {
                if (val - pv).abs() < tol {
                    converged = Some(val);
                    break;
                }
            }
            prev = Some(val);
            window *= 2;
        }
        let value = converged.ok_or_else(|| {
            ShiftError::NonConvergence(format!(
                "natural measure did not stabilize below {tol} within window {max_window}; trail: {diagnostics:?}"
            ))
        })?;
        let parry = self.parry_measure(w, tol)?.value;
        if (value - parry).abs() > 10.0 * tol {
            return Err(ShiftError::Mismatch(format!(
                "natural measure limit {value} vs Parry value {parry} (tol {tol})"
            )));
        }
        Ok(MeasureResult { value, method: MeasureMethod::Limit, inadmissible: false, diagnostics })
    }

    /// Natural measure for a reducible matrix: nonzero only on words inside
    /// the strictly dominant diagonal block, where it is that block's Parry
    /// measure. Ties in block spectral radius mean no natural measure.
    pub fn reducible_natural_measure(&self, w: &Word, tol: f64) -> Result<MeasureResult> {
        let form = block_triangularize(&self.matrix, tol)?;
        let dom = form.dominant_block.ok_or_else(|| {
            ShiftError::NoNaturalMeasure(
                "no diagonal block strictly dominates; finite window averages oscillate or split mass".into(),
            )
        })?;
        if !self.is_admissible(w) {
            return Ok(MeasureResult::inadmissible(MeasureMethod::ClosedForm));
        }
        let comp = &form.components[dom];
        if !w.symbols().iter().all(|s| comp.contains(&s.0)) {
            return Ok(MeasureResult {
                value: 0.0,
                method: MeasureMethod::ClosedForm,
                inadmissible: false,
                diagnostics: vec![],
            });
        }
        let block = self.matrix.submatrix(comp);
        let s = perron(&block, tol)?;
        let pos = |sym: Symbol| comp.iter().position(|&v| v == sym.0).unwrap();
        let v =
            s.left[pos(w.first())] * s.right[pos(w.last())] / s.lambda.powi(w.len() as i32 - 1);
        Ok(MeasureResult::closed(v))
    }

    /// Finite-window value of the full placement average: the word is
    /// allowed to sit at every offset of a block of length n + window, and
    /// the cylinder ratios are averaged over all window+1 placements.
    /// Converges even when no ordinary natural measure exists, at the cost
    /// of ergodicity.
    pub fn shift_averaged_measure(&self, w: &Word, window: usize) -> Result<f64> {
        if !self.is_admissible(w) {
            return Ok(0.0);
        }
        let n = w.len();
        // Column-sum vectors c_m = 1ᵀ A^m and row-sum vectors r_m = A^m 1,
        // built incrementally so large windows stay cheap.
        let dim = self.matrix.dim();
        let ones = vec![BigUint::one(); dim];
        let mut c = Vec::with_capacity(window + 1);
        let mut r = Vec::with_capacity(window + 1);
        c.push(ones.clone());
        r.push(ones);
        for m in 0..window {
            c.push(self.matrix.vec_mul_left(&c[m]));
            r.push(self.matrix.vec_mul_right(&r[m]));
        }
        let i1 = w.first().0;
        let i_n = w.last().0;
        let num: BigUint = (0..=window).map(|off| &c[off][i1] * &r[window - off][i_n]).sum();
        let den = self.word_count(n + window)? * BigUint::from(window + 1);
        Ok(ratio_to_f64(&big_ratio(num, den)?))
    }

    /// Exact periodic-window ratio |C⁽ᵖ⁾_{k,l}(w)| / tr(A^{n+k+l-1}), where
    /// the cylinder lives in periodic points of period n+k+l-1; the count
    /// collapses to (A^{k+l})_{iₙ,i₁} by the wraparound sum.
    pub fn periodic_ratio(&self, w: &Word, k: usize, l: usize) -> Result<BigRational> {
        let m = w.len() + k + l - 1;
        let num = if self.is_admissible(w) {
            self.matrix.pow(k + l).get(w.last().0, w.first().0).clone()
        } else {
            BigUint::zero()
        };
        big_ratio(num, self.matrix.pow(m).trace())
    }

    /// Natural measure through periodic points only; the windows are chosen
    /// so that the ambient period n+k+l-1 is divisible by the matrix period.
    pub fn periodic_natural_measure(
        &self,
        w: &Word,
        tol: f64,
        max_window: usize,
    ) -> Result<MeasureResult> {
        if !self.is_irreducible() {
            return Err(ShiftError::Reducible("periodic natural measure needs an irreducible matrix".into()));
        }
        if !self.is_admissible(w) {
            return Ok(MeasureResult::inadmissible(MeasureMethod::PeriodicLimit));
        }
        let p = spectral::period(&self.matrix)?;
        let n = w.len();
        let mut diagnostics = Vec::new();
        let mut prev: Option<f64> = None;
        let mut window = 8usize;
        let mut converged = None;
        while window <= max_window {
            let k = window;
            // Pad l so that p divides n + k + l - 1 and the trace is nonzero.
            let mut l = window;
            let rem = (n + k + l - 1) % p;
            if rem != 0 {
                l += p - rem;
            }
            let val = ratio_to_f64(&self.periodic_ratio(w, k, l)?);
            diagnostics.push((k, l, val));
            if let Some(pv) = prev {
                if (val - pv).abs() < tol {
                    converged = Some(val);
                    break;
                }
            }
            prev = Some(val);
            window *= 2;
        }
        let value = converged.ok_or_else(|| {
            ShiftError::NonConvergence(format!(
                "periodic natural measure did not stabilize below {tol} within window {max_window}; trail: {diagnostics:?}"
            ))
        })?;
        let parry = self.parry_measure(w, tol)?.value;
        if (value - parry).abs() > 10.0 * tol {
            return Err(ShiftError::Mismatch(format!(
                "periodic natural measure {value} vs Parry value {parry} (tol {tol})"
            )));
        }
        Ok(MeasureResult {
            value,
            method: MeasureMethod::PeriodicLimit,
            inadmissible: false,
            diagnostics,
        })
    }

    /// Topological entropy log λ (natural log).
    pub fn entropy(&self, tol: f64) -> Result<f64> {
        if self.is_irreducible() {
            Ok(self.spectral(tol)?.lambda.ln())
        } else {
            Ok(spectral::spectral_radius(&self.matrix, tol)?.ln())
        }
    }

    /// (1/n) Σ_w −μ(w) log μ(w) over admissible n-words under the Parry
    /// measure; approaches log λ.
    pub fn measure_entropy_partial(&self, n: usize, tol: f64) -> Result<f64> {
        let s = self.spectral(tol)?;
        let dim = self.matrix.dim();
        // Dynamic program over terminal symbols: accumulate Σ μ and Σ μ log μ
        // per endpoint pair without enumerating words explicitly is possible,
        // but n stays small here; direct enumeration keeps this independent.
        let mut total = 0.0f64;
        let mut stack: Vec<(Vec<Symbol>, ())> = (0..dim).map(|i| (vec![Symbol(i)], ())).collect();
        while let Some((w, ())) = stack.pop() {
            if w.len() == n {
                let mu = s.left[w[0].0] * s.right[w[n - 1].0] / s.lambda.powi(n as i32 - 1);
                if mu > 0.0 {
                    total -= mu * mu.ln();
                }
                continue;
            }
            let last = *w.last().unwrap();
            for j in 0..dim {
                if self.edge(last, Symbol(j)) {
                    let mut w2 = w.clone();
                    w2.push(Symbol(j));
                    stack.push((w2, ()));
                }
            }
        }
        Ok(total / n as f64)
    }

    /// Deterministic sample of the stationary Parry chain.
    pub fn sample_orbit(&self, length: usize, seed: u64, tol: f64) -> Result<Word> {
        if length == 0 {
            return Err(ShiftError::Invalid("orbit length must be at least 1".into()));
        }
        let s = self.spectral(tol)?;
        let (p, pm) = stochasticize(&self.matrix, &s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draw = |dist: &[f64], rng: &mut ChaCha8Rng| -> usize {
            let x: f64 = rng.gen();
            let mut acc = 0.0;
            for (i, &w) in dist.iter().enumerate() {
                acc += w;
                if x < acc {
                    return i;
                }
            }
            dist.len() - 1
        };
        let mut out = Vec::with_capacity(length);
        let mut cur = draw(&p, &mut rng);
        out.push(Symbol(cur));
        for _ in 1..length {
            cur = draw(&pm[cur], &mut rng);
            out.push(Symbol(cur));
        }
        Word::new(out)
    }

    /// Correlation gap |μ(w_a ∩ σ^{-(n_a+gap)} w_b) − μ(w_a)μ(w_b)| under the
    /// Parry chain; decays in the gap for aperiodic matrices.
    pub fn mixing_gap(&self, wa: &Word, wb: &Word, gap: usize, tol: f64) -> Result<f64> {
        let s = self.spectral(tol)?;
        let (p, pm) = stochasticize(&self.matrix, &s);
        if !self.is_admissible(wa) || !self.is_admissible(wb) {
            return Ok(0.0);
        }
        let mua = self.parry_measure(wa, tol)?.value;
        let mub = self.parry_measure(wb, tol)?.value;
        // (P^{gap+1})_{last(wa), first(wb)}
        let dim = self.matrix.dim();
        let mut row = vec![0.0f64; dim];
        row[wa.last().0] = 1.0;
        for _ in 0..gap + 1 {
            let mut next = vec![0.0f64; dim];
            for (i, &ri) in row.iter().enumerate() {
                if ri == 0.0 {
                    continue;
                }
                for j in 0..dim {
                    next[j] += ri * pm[i][j];
                }
            }
            row = next;
        }
        let joint = mua * row[wb.first().0] * mub / p[wb.first().0];
        Ok((joint - mua * mub).abs())
    }

    /// Uniform-distribution bounds: α/λⁿ ≤ μ(w) ≤ β/λⁿ for every admissible
    /// n-word, with α = λ·min uᵢvⱼ and β = λ·max uᵢvⱼ over symbol pairs.
    pub fn uniform_bounds(&self, tol: f64) -> Result<(f64, f64)> {
        let s = self.spectral(tol)?;
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for &u in &s.left {
            for &v in &s.right {
                let x = u * v;
                lo = lo.min(x);
                hi = hi.max(x);
            }
        }
        Ok((s.lambda * lo, s.lambda * hi))
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        self.alphabet.parse_word(s)
    }
}

impl ShiftLanguage for SftShift {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn step(&self, state: &WalkState, s: Symbol) -> Option<WalkState> {
        match state {
            WalkState::Start => Some(WalkState::Subset(1 << s.0)),
            WalkState::Subset(mask) => {
                let last = mask.trailing_zeros() as usize;
                if self.edge(Symbol(last), s) {
                    Some(WalkState::Subset(1 << s.0))
                } else {
                    None
                }
            }
            WalkState::Context(_) => None,
        }
    }

    fn periodic_admissible(&self, w: &[Symbol]) -> Result<bool> {
        let n = w.len();
        Ok((0..n).all(|t| self.edge(w[t], w[(t + 1) % n])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{self, WorkGuard};
    use num_traits::ToPrimitive;

    fn golden() -> SftShift {
        SftShift::new(
            NonnegMatrix::from_rows(&[vec![1, 1], vec![1, 0]]).unwrap(),
            Alphabet::numeric(2),
        )
        .unwrap()
    }

    /// Star graph on 4 vertices: period 2, λ = √3.
    fn star4() -> SftShift {
        SftShift::new(
            NonnegMatrix::from_rows(&[
                vec![0, 1, 1, 1],
                vec![1, 0, 0, 0],
                vec![1, 0, 0, 0],
                vec![1, 0, 0, 0],
            ])
            .unwrap(),
            Alphabet::numeric(4),
        )
        .unwrap()
    }

    #[test]
    fn admissibility_and_enumeration_match_census() {
        let g = golden();
        let guard = WorkGuard::with_limit(10_000_000);
        let words = oracle::enumerate_words(&g, 3, &guard).unwrap();
        assert_eq!(words.len(), 5);
        let tokens: Vec<String> =
            words.iter().map(|w| g.alphabet().format_word(w).replace(',', "")).collect();
        assert_eq!(tokens, vec!["111", "112", "121", "211", "212"]);
        for n in 1..=12 {
            assert_eq!(oracle::census(&g, n, &guard).unwrap(), g.word_count(n).unwrap());
            assert_eq!(oracle::count_periodic(&g, n, &guard).unwrap(), g.periodic_count(n).unwrap());
        }
    }

    #[test]
    fn cylinder_count_matches_oracle() {
        let g = golden();
        let guard = WorkGuard::with_limit(100_000_000);
        let w1 = g.parse_word("1").unwrap();
        assert_eq!(g.cylinder_count(&w1, 1, 1), BigUint::from(4u32));
        assert_eq!(
            oracle::count_cylinder(&g, &w1, 1, 1, &guard).unwrap(),
            BigUint::from(4u32)
        );
        for (k, l) in [(0, 0), (1, 2), (3, 3), (5, 2), (6, 6)] {
            for ws in ["1", "2", "12", "121", "1121"] {
                let w = g.parse_word(ws).unwrap();
                assert_eq!(
                    g.cylinder_count(&w, k, l),
                    oracle::count_cylinder(&g, &w, k, l, &guard).unwrap(),
                    "word {ws} window ({k},{l})"
                );
                assert_eq!(
                    g.natural_measure_ratio(&w, k, l).unwrap(),
                    oracle::cylinder_ratio(&g, &w, k, l, &guard).unwrap()
                );
            }
        }
    }

    #[test]
    fn parry_measure_golden_mean() {
        let g = golden();
        let w = g.parse_word("1").unwrap();
        let mu = g.parry_measure(&w, 1e-13).unwrap();
        // (5+√5)/10
        assert!((mu.value - (5.0 + 5.0f64.sqrt()) / 10.0).abs() < 1e-10);
        let bad = g.parse_word("22").unwrap();
        let r = g.parry_measure(&bad, 1e-13).unwrap();
        assert!(r.inadmissible);
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn parry_measure_full_shift_and_star() {
        let f = SftShift::full(2);
        let w = f.parse_word("1,2,1").unwrap();
        assert!((f.parry_measure(&w, 1e-13).unwrap().value - 0.125).abs() < 1e-12);

        let s4 = star4();
        let s = s4.spectral(1e-13).unwrap();
        assert!((s.lambda - 3.0f64.sqrt()).abs() < 1e-10);
        let w1 = s4.parse_word("1").unwrap();
        assert!((s4.parry_measure(&w1, 1e-13).unwrap().value - 0.5).abs() < 1e-10);
        let w12 = s4.parse_word("1,2").unwrap();
        assert!((s4.parry_measure(&w12, 1e-13).unwrap().value - 1.0 / 6.0).abs() < 1e-10);
    }

    #[test]
    fn natural_measure_converges_to_parry() {
        let g = golden();
        let w = g.parse_word("1").unwrap();
        let r = g.natural_measure(&w, 1e-9, 4096).unwrap();
        assert_eq!(r.method, MeasureMethod::Limit);
        assert!((r.value - (5.0 + 5.0f64.sqrt()) / 10.0).abs() < 1e-8);
        assert!(!r.diagnostics.is_empty());
    }

    #[test]
    fn natural_measure_periodic_matrix_averages() {
        let s4 = star4();
        let w = s4.parse_word("1").unwrap();
        let r = s4.natural_measure(&w, 1e-10, 4096).unwrap();
        assert!((r.value - 0.5).abs() < 1e-9);
        // Unaveraged ratios oscillate between even and odd total lengths.
        let even = ratio_to_f64(&s4.natural_measure_ratio(&w, 10, 9).unwrap());
        let odd = ratio_to_f64(&s4.natural_measure_ratio(&w, 10, 10).unwrap());
        assert!((even - odd).abs() > 0.1, "expected oscillation: {even} vs {odd}");
    }

    #[test]
    fn periodic_natural_measure_matches_parry() {
        let g = golden();
        let w = g.parse_word("1").unwrap();
        let r = g.periodic_natural_measure(&w, 1e-8, 4096).unwrap();
        assert_eq!(r.method, MeasureMethod::PeriodicLimit);
        assert!((r.value - (5.0 + 5.0f64.sqrt()) / 10.0).abs() < 1e-6);

        let s4 = star4();
        let w1 = s4.parse_word("1").unwrap();
        let r = s4.periodic_natural_measure(&w1, 1e-9, 4096).unwrap();
        assert!((r.value - 0.5).abs() < 1e-7);

        let f = SftShift::full(2);
        let w0 = f.parse_word("1").unwrap();
        let r = f.periodic_natural_measure(&w0, 1e-10, 1024).unwrap();
        assert!((r.value - 0.5).abs() < 1e-9);
    }

    #[test]
    fn reducible_upper_triangular_has_no_natural_measure() {
        let a = SftShift::new(
            NonnegMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap(),
            Alphabet::numeric(2),
        )
        .unwrap();
        let w = a.parse_word("1").unwrap();
        match a.natural_measure(&w, 1e-9, 1024) {
            Err(ShiftError::NoNaturalMeasure(_)) => {}
            other => panic!("expected NoNaturalMeasure, got {other:?}"),
        }
        // Shift-averaged values exist: μ(1) = μ(2) = 1/2, μ(12) = 0.
        let m1 = a.shift_averaged_measure(&w, 4000).unwrap();
        assert!((m1 - 0.5).abs() < 1e-3, "{m1}");
        let w2 = a.parse_word("2").unwrap();
        let m2 = a.shift_averaged_measure(&w2, 4000).unwrap();
        assert!((m2 - 0.5).abs() < 1e-3, "{m2}");
        let w12 = a.parse_word("1,2").unwrap();
        let m12 = a.shift_averaged_measure(&w12, 4000).unwrap();
        assert!(m12 < 1e-3, "{m12}");
    }

    #[test]
    fn reducible_dominant_block_gets_block_parry() {
        // Golden-mean block dominating a fixed point; vertex 2 is subordinate.
        let a = SftShift::new(
            NonnegMatrix::from_rows(&[vec![1, 1, 1], vec![1, 0, 0], vec![0, 0, 1]]).unwrap(),
            Alphabet::numeric(3),
        )
        .unwrap();
        let w = a.parse_word("1").unwrap();
        let r = a.reducible_natural_measure(&w, 1e-13).unwrap();
        assert!((r.value - (5.0 + 5.0f64.sqrt()) / 10.0).abs() < 1e-9);
        let w3 = a.parse_word("3").unwrap();
        let r3 = a.reducible_natural_measure(&w3, 1e-13).unwrap();
        assert_eq!(r3.value, 0.0);
        assert!(!r3.inadmissible);
        // Cross-check against the empirical placement-free ratio series:
        // the dominant block swallows the mass.
        let guard = WorkGuard::with_limit(100_000_000);
        let ratio = oracle::cylinder_ratio(&a, &w, 7, 7, &guard).unwrap();
        assert!((ratio.to_f64().unwrap() - r.value).abs() < 0.05);
    }

    #[test]
    fn shift_average_agrees_with_parry_when_aperiodic() {
        let g = golden();
        let w = g.parse_word("1").unwrap();
        let m = g.shift_averaged_measure(&w, 2000).unwrap();
        assert!((m - (5.0 + 5.0f64.sqrt()) / 10.0).abs() < 1e-3);
    }

    #[test]
    fn entropy_values() {
        assert!((SftShift::full(2).entropy(1e-13).unwrap() - 2.0f64.ln()).abs() < 1e-12);
        assert!(
            (golden().entropy(1e-13).unwrap() - ((1.0 + 5.0f64.sqrt()) / 2.0).ln()).abs() < 1e-10
        );
        assert!((star4().entropy(1e-13).unwrap() - 3.0f64.sqrt().ln()).abs() < 1e-10);
        let h = golden().measure_entropy_partial(12, 1e-13).unwrap();
        assert!((h - golden().entropy(1e-13).unwrap()).abs() < 0.05, "{h}");
    }

    #[test]
    fn parry_additivity_and_normalization() {
        let g = golden();
        for ws in ["1", "2", "12", "121"] {
            let w = g.parse_word(ws).unwrap();
            let mu = g.parry_measure(&w, 1e-13).unwrap().value;
            let mut right = 0.0;
            let mut left = 0.0;
            for s in 0..2 {
                let mut ext = w.symbols().to_vec();
                ext.push(Symbol(s));
                right += g.parry_measure(&Word::new(ext).unwrap(), 1e-13).unwrap().value;
                let mut pre = vec![Symbol(s)];
                pre.extend_from_slice(w.symbols());
                left += g.parry_measure(&Word::new(pre).unwrap(), 1e-13).unwrap().value;
            }
            assert!((mu - right).abs() < 1e-12, "{ws} right");
            assert!((mu - left).abs() < 1e-12, "{ws} left");
        }
        let guard = WorkGuard::with_limit(10_000_000);
        for n in 1..=10 {
            let total: f64 = oracle::enumerate_words(&g, n, &guard)
                .unwrap()
                .iter()
                .map(|w| g.parry_measure(w, 1e-13).unwrap().value)
                .sum();
            assert!((total - 1.0).abs() < 1e-10, "n={n}: {total}");
        }
    }

    #[test]
    fn mixing_gap_decays() {
        let g = golden();
        let wa = g.parse_word("1,2").unwrap();
        let wb = g.parse_word("1").unwrap();
        let g5 = g.mixing_gap(&wa, &wb, 5, 1e-13).unwrap();
        let g20 = g.mixing_gap(&wa, &wb, 20, 1e-13).unwrap();
        let g50 = g.mixing_gap(&wa, &wb, 50, 1e-13).unwrap();
        assert!(g20 < g5);
        assert!(g50 <= g20);
        assert!(g50 < 1e-6, "{g50}");
    }

    #[test]
    fn uniform_bounds_hold() {
        let g = golden();
        let (alpha, beta) = g.uniform_bounds(1e-13).unwrap();
        let s = g.spectral(1e-13).unwrap();
        let guard = WorkGuard::with_limit(10_000_000);
        for n in 1..=8 {
            for w in oracle::enumerate_words(&g, n, &guard).unwrap() {
                let mu = g.parry_measure(&w, 1e-13).unwrap().value;
                let lam_n = s.lambda.powi(n as i32);
                assert!(mu >= alpha / lam_n - 1e-12);
                assert!(mu <= beta / lam_n + 1e-12);
            }
        }
    }

    #[test]
    fn orbit_sampling_deterministic_and_stationary() {
        let g = golden();
        let a = g.sample_orbit(1000, 7, 1e-13).unwrap();
        let b = g.sample_orbit(1000, 7, 1e-13).unwrap();
        assert_eq!(a, b);
        assert!(g.is_admissible(&a));
        let long = g.sample_orbit(1_000_000, 42, 1e-13).unwrap();
        let freq = long.symbols().iter().filter(|s| s.0 == 0).count() as f64 / 1e6;
        // Stationary weight of "1" is (5+√5)/10 ≈ 0.7236; 3σ ≈ 0.0013.
        assert!((freq - 0.7236).abs() < 0.0015, "{freq}");
    }
}
