//! Sofic shifts presented by labeled graphs: resolving checks, the
//! subset-construction census, natural measures in closed and limit form,
//! presentation minimization, signed-matrix periodic counts, the product
//! semigroup bounds, and the hidden-Markov pushforward check.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashSet};

use crate::error::{Result, ShiftError};
use crate::matrix::{
    big_ratio, ratio_to_f64, Alphabet, IntMatrix, MeasureMethod, MeasureResult, NonnegMatrix,
    RectMatrix, Symbol, Word,
};
use crate::oracle::{ShiftLanguage, WalkState};
use crate::spectral::{self, is_irreducible, perron, SpectralData};

const MAX_SUBSET_VERTICES: usize = 12;

/// A labeled multigraph presenting a sofic shift.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, Symbol)>,
    alphabet: Alphabet,
}

/// Per-symbol indicator matrices and their sum (the adjacency count matrix).
#[derive(Debug, Clone)]
pub struct LetterMatrices {
    pub per: Vec<NonnegMatrix>,
    pub total: NonnegMatrix,
}

/// Subset-indexed block matrices of the census construction. Subsets are
/// ordered by (size, lexicographic member list); `subsets[k-1]` lists the
/// k-subsets in that order.
#[derive(Debug, Clone)]
pub struct SubsetMatrices {
    pub subsets: Vec<Vec<Vec<usize>>>,
    /// (k, l) -> total block, l ≤ k.
    pub blocks: BTreeMap<(usize, usize), RectMatrix>,
    /// (k, l, symbol index) -> per-symbol slice.
    pub per_symbol: BTreeMap<(usize, usize, usize), RectMatrix>,
}

/// Parity-signed subset matrices used for periodic-point counts.
#[derive(Debug, Clone)]
pub struct SignedMatrices {
    pub subsets: Vec<Vec<Vec<usize>>>,
    /// per_j[j-1] = signed matrix on j-subsets.
    pub per_j: Vec<IntMatrix>,
    /// per_j_symbol[j-1][s] = per-symbol slice.
    pub per_j_symbol: Vec<Vec<IntMatrix>>,
}

/// Bounds α ≤ λⁿμ(w) ≤ β valid for every admissible n-word.
#[derive(Debug, Clone, Copy)]
pub struct UniformBounds {
    pub alpha: f64,
    pub beta: f64,
    pub semigroup_size: usize,
}

/// Block matrix with one block per (k, l), l ≤ k; the assembled census
/// matrix is never materialized, products run blockwise.
#[derive(Debug, Clone)]
struct BlockMat {
    n: usize,
    blocks: BTreeMap<(usize, usize), RectMatrix>,
}

impl BlockMat {
    fn identity(sizes: &[usize]) -> BlockMat {
        let mut blocks = BTreeMap::new();
        for (k, &sz) in sizes.iter().enumerate() {
            blocks.insert((k + 1, k + 1), RectMatrix::identity(sz));
        }
        BlockMat { n: sizes.len(), blocks }
    }

    fn mul(&self, other: &BlockMat) -> BlockMat {
        let mut blocks = BTreeMap::new();
        for k in 1..=self.n {
            for l in 1..=k {
                let mut acc: Option<RectMatrix> = None;
                for m in l..=k {
                    if let (Some(x), Some(y)) = (self.blocks.get(&(k, m)), other.blocks.get(&(m, l)))
                    {
                        let p = x.mul(y);
                        acc = Some(match acc {
                            None => p,
                            Some(a) => a.add(&p),
                        });
                    }
                }
                if let Some(a) = acc {
                    if !a.is_zero() {
                        blocks.insert((k, l), a);
                    }
                }
            }
        }
        BlockMat { n: self.n, blocks }
    }

    /// Σ_k (−1)^{k+1} Σ_{l≤k} |block (k,l)|.
    fn signed_entry_sum(&self) -> BigInt {
        let mut total = BigInt::zero();
        for (&(k, _), b) in &self.blocks {
            let s = BigInt::from(b.entry_sum());
            if k % 2 == 1 {
                total += s;
            } else {
                total -= s;
            }
        }
        total
    }
}

impl LabeledGraph {
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize, Symbol)>,
        alphabet: Alphabet,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(ShiftError::Invalid("graph needs at least one vertex".into()));
        }
        if vertex_count > 64 {
            return Err(ShiftError::Invalid("at most 64 vertices supported".into()));
        }
        for &(f, t, s) in &edges {
            if f >= vertex_count || t >= vertex_count {
                return Err(ShiftError::Invalid(format!("edge ({f},{t}) out of range")));
            }
            if s.0 >= alphabet.size() {
                return Err(ShiftError::Invalid("edge label outside alphabet".into()));
            }
        }
        if edges.is_empty() {
            return Err(ShiftError::Invalid("graph needs at least one edge".into()));
        }
        Ok(LabeledGraph { vertex_count, edges, alphabet })
    }

    /// Vertex shift of a 0-1 matrix as a labeled graph: edge i -> j carries
    /// the label of j, so label words are exactly the vertex words.
    pub fn from_vertex_shift(matrix: &NonnegMatrix, alphabet: Alphabet) -> Result<Self> {
        let n = matrix.dim();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !matrix.get(i, j).is_zero() {
                    edges.push((i, j, Symbol(j)));
                }
            }
        }
        LabeledGraph::new(n, edges, alphabet)
    }

    pub fn graph_alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize, Symbol)] {
        &self.edges
    }

    pub fn is_right_resolving(&self) -> bool {
        let mut seen = HashSet::new();
        self.edges.iter().all(|&(f, _, s)| seen.insert((f, s)))
    }

    pub fn is_left_resolving(&self) -> bool {
        let mut seen = HashSet::new();
        self.edges.iter().all(|&(_, t, s)| seen.insert((t, s)))
    }

    pub fn letter_matrices(&self) -> LetterMatrices {
        let n = self.vertex_count;
        let mut per = vec![NonnegMatrix::zeros(n); self.alphabet.size()];
        let mut total = NonnegMatrix::zeros(n);
        for &(f, t, s) in &self.edges {
            let v = per[s.0].get(f, t) + BigUint::one();
            per[s.0].set(f, t, v);
            let w = total.get(f, t) + BigUint::one();
            total.set(f, t, w);
        }
        LetterMatrices { per, total }
    }

    pub fn is_irreducible(&self) -> bool {
        is_irreducible(&self.letter_matrices().total)
    }

    pub fn spectral(&self, tol: f64) -> Result<SpectralData> {
        perron(&self.letter_matrices().total, tol)
    }

    fn require_right_resolving(&self) -> Result<()> {
        if !self.is_right_resolving() {
            return Err(ShiftError::Invalid("graph is not right-resolving".into()));
        }
        Ok(())
    }

    fn require_irreducible(&self) -> Result<()> {
        if !self.is_irreducible() {
            return Err(ShiftError::Reducible("presentation graph is reducible".into()));
        }
        Ok(())
    }

    /// succ[v][s]: the unique s-successor of v, when the graph is
    /// right-resolving.
    fn successors(&self) -> Vec<Vec<Option<usize>>> {
        let mut succ = vec![vec![None; self.alphabet.size()]; self.vertex_count];
        for &(f, t, s) in &self.edges {
            succ[f][s.0] = Some(t);
        }
        succ
    }

    /// Product 𝔸_{s₁}⋯𝔸_{sₙ} of the letter matrices.
    pub fn word_matrix(&self, w: &Word) -> NonnegMatrix {
        let lm = self.letter_matrices();
        let mut m = NonnegMatrix::identity(self.vertex_count);
        for &s in w.symbols() {
            m = m.mul(&lm.per[s.0]);
        }
        m
    }

    pub fn is_admissible(&self, w: &Word) -> bool {
        !self.word_matrix(w).is_zero()
    }

    pub fn subset_matrices(&self) -> Result<SubsetMatrices> {
        self.require_right_resolving()?;
        let n = self.vertex_count;
        if n > MAX_SUBSET_VERTICES {
            return Err(ShiftError::Invalid(format!(
                "subset construction supports at most {MAX_SUBSET_VERTICES} vertices"
            )));
        }
        let subsets = enumerate_subsets(n);
        let succ = self.successors();
        let index: Vec<BTreeMap<&[usize], usize>> = subsets
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect())
            .collect();
        let mut blocks: BTreeMap<(usize, usize), RectMatrix> = BTreeMap::new();
        let mut per_symbol: BTreeMap<(usize, usize, usize), RectMatrix> = BTreeMap::new();
        for k in 1..=n {
            for (vi, vset) in subsets[k - 1].iter().enumerate() {
                for s in 0..self.alphabet.size() {
                    let mut image: Vec<usize> = Vec::with_capacity(k);
                    let mut ok = true;
                    for &v in vset {
                        match succ[v][s] {
                            Some(t) => image.push(t),
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if !ok {
                        continue;
                    }
                    image.sort_unstable();
                    image.dedup();
                    let l = image.len();
                    let wi = index[l - 1][image.as_slice()];
                    let rows = subsets[k - 1].len();
                    let cols = subsets[l - 1].len();
                    per_symbol
                        .entry((k, l, s))
                        .or_insert_with(|| RectMatrix::zeros(rows, cols))
                        .add_at(vi, wi, BigUint::one());
                    blocks
                        .entry((k, l))
                        .or_insert_with(|| RectMatrix::zeros(rows, cols))
                        .add_at(vi, wi, BigUint::one());
                }
            }
        }
        Ok(SubsetMatrices { subsets, blocks, per_symbol })
    }

    fn block_total(&self, sm: &SubsetMatrices) -> BlockMat {
        BlockMat { n: sm.subsets.len(), blocks: sm.blocks.clone() }
    }

    fn block_symbol(&self, sm: &SubsetMatrices, s: Symbol) -> BlockMat {
        let blocks = sm
            .per_symbol
            .iter()
            .filter(|&(&(_, _, sym), _)| sym == s.0)
            .map(|(&(k, l, _), m)| ((k, l), m.clone()))
            .collect();
        BlockMat { n: sm.subsets.len(), blocks }
    }

    /// |B_n| via the signed block census.
    pub fn count_words(&self, n: usize) -> Result<BigUint> {
        if n == 0 {
            return Err(ShiftError::Invalid("length must be at least 1".into()));
        }
        let sm = self.subset_matrices()?;
        let a = self.block_total(&sm);
        let mut x = a.clone();
        for _ in 1..n {
            x = x.mul(&a);
        }
        let total = x.signed_entry_sum();
        if total.is_negative() {
            return Err(ShiftError::Mismatch("negative census from signed block sum".into()));
        }
        Ok(total.to_biguint().unwrap())
    }

    /// |C_{k,l}(w)| via the same census with the window pinned to w.
    pub fn count_cylinder_exact(&self, w: &Word, k: usize, l: usize) -> Result<BigUint> {
        let sm = self.subset_matrices()?;
        let sizes: Vec<usize> = sm.subsets.iter().map(|s| s.len()).collect();
        let a = self.block_total(&sm);
        let mut x = BlockMat::identity(&sizes);
        for _ in 0..k {
            x = x.mul(&a);
        }
        for &s in w.symbols() {
            x = x.mul(&self.block_symbol(&sm, s));
        }
        for _ in 0..l {
            x = x.mul(&a);
        }
        let total = x.signed_entry_sum();
        if total.is_negative() {
            return Err(ShiftError::Mismatch("negative cylinder count from signed block sum".into()));
        }
        Ok(total.to_biguint().unwrap())
    }

    /// Closed-form natural measure μ(w) = U 𝔸_{s₁}⋯𝔸_{sₙ} V / λⁿ.
    pub fn natural_measure(&self, w: &Word, tol: f64) -> Result<MeasureResult> {
        self.require_right_resolving()?;
        self.require_irreducible()?;
        let s = self.spectral(tol)?;
        let m = self.word_matrix(w);
        if m.is_zero() {
            return Ok(MeasureResult::inadmissible(MeasureMethod::ClosedForm));
        }
        let n = self.vertex_count;
        let mut umv = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let e = m.get(i, j);
                if !e.is_zero() {
                    umv += s.left[i] * e.to_f64().unwrap() * s.right[j];
                }
            }
        }
        Ok(MeasureResult::closed(umv / s.lambda.powi(w.len() as i32)))
    }

    fn window_limit(
        &self,
        w: &Word,
        tol: f64,
        max_window: usize,
        ratio: &dyn Fn(usize, usize) -> Result<BigRational>,
        method: MeasureMethod,
    ) -> Result<MeasureResult> {
        let p = spectral::period(&self.letter_matrices().total)?;
        let mut diagnostics = Vec::new();
        let mut prev: Option<f64> = None;
        let mut window = 8usize.max(p);
        let mut converged = None;
        while window <= max_window {
            // Average the p window shifts (k-j, l+j).
            let mut acc = BigRational::zero();
            for j in 0..p {
                acc += ratio(window - j, window + j)?;
            }
            let val = ratio_to_f64(&(acc / BigRational::from_integer(p.into())));
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
                "measure limit did not stabilize below {tol} within window {max_window}; trail: {diagnostics:?}"
            ))
        })?;
        let closed = self.natural_measure(w, tol)?.value;
        if (value - closed).abs() > 10.0 * tol.max(1e-12) {
            return Err(ShiftError::Mismatch(format!(
                "window limit {value} vs closed form {closed}"
            )));
        }
        Ok(MeasureResult { value, method, inadmissible: false, diagnostics })
    }

    /// Natural measure as the limit of exact census ratios, checked against
    /// the closed form.
    pub fn natural_measure_limit(
        &self,
        w: &Word,
        tol: f64,
        max_window: usize,
    ) -> Result<MeasureResult> {
        self.require_right_resolving()?;
        self.require_irreducible()?;
        if !self.is_admissible(w) {
            return Ok(MeasureResult::inadmissible(MeasureMethod::Limit));
        }
        let n = w.len();
        self.window_limit(
            w,
            tol,
            max_window,
            &|k, l| big_ratio(self.count_cylinder_exact(w, k, l)?, self.count_words(n + k + l)?),
            MeasureMethod::Limit,
        )
    }

    /// Natural measure through the edge shift: |𝔸^k 𝔸_w 𝔸^l| / |𝔸^{n+k+l}|.
    pub fn edge_shift_measure(&self, w: &Word, tol: f64, max_window: usize) -> Result<MeasureResult> {
        self.require_right_resolving()?;
        self.require_irreducible()?;
        if !self.is_admissible(w) {
            return Ok(MeasureResult::inadmissible(MeasureMethod::Limit));
        }
        let lm = self.letter_matrices();
        let mw = self.word_matrix(w);
        let n = w.len();
        self.window_limit(
            w,
            tol,
            max_window,
            &|k, l| {
                let num = lm.total.pow(k).mul(&mw).mul(&lm.total.pow(l)).entry_sum();
                big_ratio(num, lm.total.pow(n + k + l).entry_sum())
            },
            MeasureMethod::Limit,
        )
    }

    /// Merge vertices with the same follower set (partition refinement on
    /// label-transition behavior); the result presents the same shift, which
    /// is cross-checked by census agreement up to length 10.
    pub fn minimal_right_resolving(&self) -> Result<LabeledGraph> {
        self.require_right_resolving()?;
        let succ = self.successors();
        let nsym = self.alphabet.size();
        let n = self.vertex_count;
        // Initial split: by the set of defined out-labels.
        let mut class: Vec<usize> = (0..n)
            .map(|v| {
                (0..nsym).fold(0usize, |acc, s| acc | ((succ[v][s].is_some() as usize) << s))
            })
            .collect();
        // Compact class ids.
        loop {
            let sig: Vec<Vec<Option<usize>>> = (0..n)
                .map(|v| {
                    let mut row: Vec<Option<usize>> = vec![None; nsym + 1];
                    row[nsym] = Some(class[v]);
                    for s in 0..nsym {
                        row[s] = succ[v][s].map(|t| class[t]);
                    }
                    row
                })
                .collect();
            let mut ids: BTreeMap<&Vec<Option<usize>>, usize> = BTreeMap::new();
            let mut next: Vec<usize> = Vec::with_capacity(n);
            for row in &sig {
                let n_ids = ids.len();
                let id = *ids.entry(row).or_insert(n_ids);
                next.push(id);
            }
            if next == class {
                break;
            }
            class = next;
        }
        let ncls = class.iter().max().unwrap() + 1;
        let mut edges = Vec::new();
        let mut done = HashSet::new();
        for v in 0..n {
            for s in 0..nsym {
                if let Some(t) = succ[v][s] {
                    if done.insert((class[v], s)) {
                        edges.push((class[v], class[t], Symbol(s)));
                    }
                }
            }
        }
        let merged = LabeledGraph::new(ncls, edges, self.alphabet.clone())?;
        for n in 1..=10 {
            if merged.count_words(n)? != self.count_words(n)? {
                return Err(ShiftError::Mismatch(format!(
                    "minimized presentation census disagrees at length {n}"
                )));
            }
        }
        Ok(merged)
    }

    /// Perron value of 𝔸 strictly dominates the spectral radius of every
    /// higher subset block 𝔸̃_{j,j} — the minimality gap condition.
    pub fn spectral_gap_check(&self, tol: f64) -> Result<bool> {
        self.require_right_resolving()?;
        self.require_irreducible()?;
        let lambda = self.spectral(tol)?.lambda;
        let sm = self.subset_matrices()?;
        for j in 2..=self.vertex_count {
            let blk = match sm.blocks.get(&(j, j)) {
                Some(b) => b.to_square()?,
                None => continue,
            };
            let r = spectral::spectral_radius(&blk, tol)?;
            if r >= lambda - 1e-9 * lambda {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn signed_matrices(&self) -> Result<SignedMatrices> {
        self.require_right_resolving()?;
        let n = self.vertex_count;
        if n > MAX_SUBSET_VERTICES {
            return Err(ShiftError::Invalid(format!(
                "signed construction supports at most {MAX_SUBSET_VERTICES} vertices"
            )));
        }
        let subsets = enumerate_subsets(n);
        let succ = self.successors();
        let nsym = self.alphabet.size();
        let mut per_j = Vec::with_capacity(n);
        let mut per_j_symbol = Vec::with_capacity(n);
        for j in 1..=n {
            let list = &subsets[j - 1];
            let index: BTreeMap<&[usize], usize> =
                list.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
            let mut total = IntMatrix::zeros(list.len());
            let mut slices = vec![IntMatrix::zeros(list.len()); nsym];
            for (vi, vset) in list.iter().enumerate() {
                for s in 0..nsym {
                    let mut image: Vec<usize> = Vec::with_capacity(j);
                    let mut ok = true;
                    for &v in vset {
                        match succ[v][s] {
                            Some(t) => image.push(t),
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if !ok {
                        continue;
                    }
                    let mut sorted = image.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    if sorted.len() != j {
                        continue;
                    }
                    let wi = index[sorted.as_slice()];
                    let sign = permutation_parity(&image, &sorted);
                    let v = slices[s].get(vi, wi) + sign.clone();
                    slices[s].set(vi, wi, v.clone());
                    let t = total.get(vi, wi) + sign;
                    total.set(vi, wi, t);
                }
            }
            per_j.push(total);
            per_j_symbol.push(slices);
        }
        Ok(SignedMatrices { subsets, per_j, per_j_symbol })
    }

    /// |P_n| = Σ_j (−1)^{j+1} tr(𝔹̃ⱼⁿ).
    pub fn count_periodic(&self, n: usize) -> Result<BigUint> {
        if n == 0 {
            return Err(ShiftError::Invalid("period must be at least 1".into()));
        }
        let sm = self.signed_matrices()?;
        let mut total = BigInt::zero();
        for (j, b) in sm.per_j.iter().enumerate() {
            let t = b.pow(n).trace();
            if j % 2 == 0 {
                total += t;
            } else {
                total -= t;
            }
        }
        if total.is_negative() {
            return Err(ShiftError::Mismatch("negative periodic count from signed trace".into()));
        }
        Ok(total.to_biguint().unwrap())
    }

    /// Periodic cylinder count: number of periodic points of period
    /// m = n+k+l−1 whose orbit carries w at offset k, via signed traces.
    pub fn periodic_cylinder_count(&self, w: &Word, k: usize, l: usize) -> Result<BigInt> {
        if l == 0 {
            return Err(ShiftError::Invalid("right window must be at least 1".into()));
        }
        let sm = self.signed_matrices()?;
        let mut total = BigInt::zero();
        for (j, b) in sm.per_j.iter().enumerate() {
            let mut m = b.pow(k);
            for &s in w.symbols() {
                m = m.mul(&sm.per_j_symbol[j][s.0]);
            }
            m = m.mul(&b.pow(l - 1));
            let t = m.trace();
            if j % 2 == 0 {
                total += t;
            } else {
                total -= t;
            }
        }
        Ok(total)
    }

    /// Natural measure through periodic points, checked against the closed
    /// form. Windows are padded so the ambient period hits the nonzero
    /// residue class when 𝔸 is periodic.
    pub fn periodic_natural_measure(
        &self,
        w: &Word,
        tol: f64,
        max_window: usize,
    ) -> Result<MeasureResult> {
        self.require_right_resolving()?;
        self.require_irreducible()?;
        if !self.is_admissible(w) {
            return Ok(MeasureResult::inadmissible(MeasureMethod::PeriodicLimit));
        }
        let p = spectral::period(&self.letter_matrices().total)?;
        let n = w.len();
        let mut diagnostics = Vec::new();
        let mut prev: Option<f64> = None;
        let mut window = 8usize;
        let mut converged = None;
        while window <= max_window {
            let k = window;
            let mut l = window;
            let rem = (n + k + l - 1) % p;
            if rem != 0 {
                l += p - rem;
            }
            let m = n + k + l - 1;
            let num = self.periodic_cylinder_count(w, k, l)?;
            let den = BigInt::from(self.count_periodic(m)?);
            if den.is_zero() {
                return Err(ShiftError::Invalid(format!("no periodic points of period {m}")));
            }
            let val = ratio_to_f64(&BigRational::new(num, den));
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
                "periodic measure limit did not stabilize below {tol} within window {max_window}; trail: {diagnostics:?}"
            ))
        })?;
        let closed = self.natural_measure(w, tol)?.value;
        if (value - closed).abs() > 10.0 * tol.max(1e-12) {
            return Err(ShiftError::Mismatch(format!(
                "periodic measure limit {value} vs closed form {closed}"
            )));
        }
        Ok(MeasureResult { value, method: MeasureMethod::PeriodicLimit, inadmissible: false, diagnostics })
    }

    /// Closure of the letter matrices under product (as boolean matrices),
    /// with the min/max of U M V over nonzero contributions. The closure has
    /// at most N^N elements.
    pub fn uniform_bounds(&self, tol: f64) -> Result<UniformBounds> {
        self.require_right_resolving()?;
        self.require_irreducible()?;
        let s = self.spectral(tol)?;
        let n = self.vertex_count;
        // Boolean matrices as row bitmasks.
        let lm = self.letter_matrices();
        let to_mask = |m: &NonnegMatrix| -> Vec<u64> {
            (0..n)
                .map(|i| (0..n).fold(0u64, |acc, j| acc | (((!m.get(i, j).is_zero()) as u64) << j)))
                .collect()
        };
        let bool_mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
            (0..n)
                .map(|i| {
                    let mut row = 0u64;
                    for j in 0..n {
                        if a[i] >> j & 1 == 1 {
                            row |= b[j];
                        }
                    }
                    row
                })
                .collect()
        };
        let gens: Vec<Vec<u64>> = lm.per.iter().map(to_mask).collect();
        let mut closure: HashSet<Vec<u64>> = gens.iter().filter(|g| g.iter().any(|&r| r != 0)).cloned().collect();
        // Products of row-subnormalized 0-1 matrices are partial functions
        // on the vertex set, so the closure has at most (N+1)^N nonzero
        // elements.
        let cap = (n + 1).pow(n as u32);
        let mut frontier: Vec<Vec<u64>> = closure.iter().cloned().collect();
        while let Some(m) = frontier.pop() {
            for g in &gens {
                let p = bool_mul(&m, g);
                if p.iter().all(|&r| r == 0) {
                    continue;
                }
                if closure.insert(p.clone()) {
                    if closure.len() > cap {
                        return Err(ShiftError::Mismatch(format!(
                            "semigroup closure exceeded (N+1)^N = {cap}"
                        )));
                    }
                    frontier.push(p);
                }
            }
        }
        let mut alpha = f64::INFINITY;
        let mut beta = 0.0f64;
        for m in &closure {
            let mut umv = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    if m[i] >> j & 1 == 1 {
                        umv += s.left[i] * s.right[j];
                    }
                }
            }
            if umv > 0.0 {
                alpha = alpha.min(umv);
                beta = beta.max(umv);
            }
        }
        if !alpha.is_finite() || beta <= 0.0 {
            return Err(ShiftError::Invalid("no nonzero products in semigroup".into()));
        }
        Ok(UniformBounds { alpha, beta, semigroup_size: closure.len() })
    }

    /// The natural measure is the pushforward of the edge-shift Parry
    /// measure: for every label word of length ≤ n, the sum of edge-path
    /// Parry measures over paths with that label equals μ(w) within tol.
    pub fn hidden_markov_check(&self, n: usize, tol: f64) -> Result<bool> {
        self.require_right_resolving()?;
        self.require_irreducible()?;
        let ecount = self.edges.len();
        // Edge adjacency: e -> f iff target(e) = source(f).
        let mut adj = NonnegMatrix::zeros(ecount);
        for (a, &(_, t, _)) in self.edges.iter().enumerate() {
            for (b, &(f, _, _)) in self.edges.iter().enumerate() {
                if t == f {
                    adj.set(a, b, BigUint::one());
                }
            }
        }
        let es = perron(&adj, tol)?;
        let guard = crate::oracle::WorkGuard::new();
        for len in 1..=n {
            for w in crate::oracle::enumerate_words(self, len, &guard)? {
                // Sum Parry measures of edge paths labeled w.
                let mut paths: Vec<(usize, f64)> = Vec::new(); // (last edge, u_{e1}/λ^{m-1} partial)
                for (e, &(_, _, s)) in self.edges.iter().enumerate() {
                    if s == w.symbols()[0] {
                        paths.push((e, es.left[e]));
                    }
                }
                for &sym in &w.symbols()[1..] {
                    let mut next = Vec::new();
                    for &(e, acc) in &paths {
                        for (f, &(fs, _, s)) in self.edges.iter().enumerate() {
                            if s == sym && self.edges[e].1 == fs {
                                next.push((f, acc / es.lambda));
                            }
                        }
                    }
                    paths = next;
                }
                let push: f64 = paths.iter().map(|&(e, acc)| acc * es.right[e]).sum();
                let mu = self.natural_measure(&w, tol)?.value;
                if (push - mu).abs() > tol.max(1e-10) * 100.0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        self.alphabet.parse_word(s)
    }
}

fn enumerate_subsets(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for mask in 1u64..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        out[members.len() - 1].push(members);
    }
    // Within each size, order lexicographically by member list.
    for list in &mut out {
        list.sort();
    }
    out
}

/// Sign of the permutation taking `tuple` to `sorted` (both same multiset,
/// distinct elements).
fn permutation_parity(tuple: &[usize], sorted: &[usize]) -> BigInt {
    let perm: Vec<usize> =
        tuple.iter().map(|x| sorted.iter().position(|y| y == x).unwrap()).collect();
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

impl ShiftLanguage for LabeledGraph {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn step(&self, state: &WalkState, s: Symbol) -> Option<WalkState> {
        let next = |mask: u64| -> u64 {
            let mut out = 0u64;
            for &(f, t, l) in &self.edges {
                if l == s && mask >> f & 1 == 1 {
                    out |= 1 << t;
                }
            }
            out
        };
        let from = match state {
            WalkState::Start => (1u64 << self.vertex_count) - 1,
            WalkState::Subset(m) => *m,
            WalkState::Context(_) => return None,
        };
        let to = next(from);
        if to == 0 {
            None
        } else {
            Some(WalkState::Subset(to))
        }
    }

    fn periodic_admissible(&self, w: &[Symbol]) -> Result<bool> {
        // w^∞ is in the shift iff the digraph of 𝔸_w has a cycle.
        let lm = self.letter_matrices();
        let mut m = NonnegMatrix::identity(self.vertex_count);
        for &s in w {
            m = m.mul(&lm.per[s.0]);
        }
        // Boolean power test: some trace of m^t, t ≤ N, is positive.
        let mut p = m.clone();
        for _ in 0..self.vertex_count {
            if !p.trace().is_zero() {
                return Ok(true);
            }
            p = p.mul(&m);
        }
        Ok(false)
    }
}
