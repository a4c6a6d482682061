//! Perron–Frobenius data for nonnegative integer matrices: dominant
//! eigenvalue and eigenvectors, period structure, cyclic decomposition,
//! and the block-triangular form of reducible matrices.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Result, ShiftError};
use crate::matrix::{biguint_to_f64, NonnegMatrix};

pub const DEFAULT_TOL: f64 = 1e-12;
const MAX_ITERS: usize = 1_000_000;

/// Dominant eigenvalue with left/right eigenvectors, normalized so that the
/// right vector has maximum entry 1 and `left · right = 1`.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub lambda: f64,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    pub period: usize,
    pub tol: f64,
}

/// Cyclic class structure of an irreducible matrix of period `p`.
#[derive(Debug, Clone)]
pub struct CyclicDecomposition {
    pub period: usize,
    /// Classes D_1..D_p in original vertex indices; edges go D_b -> D_{b+1}.
    pub classes: Vec<Vec<usize>>,
    /// Permutation mapping new index -> original index (classes concatenated).
    pub permutation: Vec<usize>,
    /// Diagonal blocks of A^p restricted to each class (irreducible, aperiodic).
    pub power_blocks: Vec<NonnegMatrix>,
}

/// Strongly-connected-component condensation in topological order
/// (sources first), giving a block upper-triangular form.
#[derive(Debug, Clone)]
pub struct BlockTriangularForm {
    /// Components in topological order, original vertex indices.
    pub components: Vec<Vec<usize>>,
    pub permutation: Vec<usize>,
    pub diagonal_blocks: Vec<NonnegMatrix>,
    pub spectral_radii: Vec<f64>,
    /// Index of the diagonal block with strictly largest spectral radius,
    /// if one exists.
    pub dominant_block: Option<usize>,
}

fn adjacency(a: &NonnegMatrix) -> Vec<Vec<usize>> {
    let n = a.dim();
    (0..n)
        .map(|i| (0..n).filter(|&j| !a.get(i, j).is_zero()).collect())
        .collect()
}

/// Tarjan's algorithm, iterative. Components come out in reverse
/// topological order (sinks first); we reverse to get sources first.
pub fn strongly_connected_components(a: &NonnegMatrix) -> Vec<Vec<usize>> {
    let n = a.dim();
    let adj = adjacency(a);
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut comps: Vec<Vec<usize>> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // (vertex, next child position)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut ci)) = call.last_mut() {
            if *ci < adj[v].len() {
                let w = adj[v][*ci];
                *ci += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&mut (p, _)) = call.last_mut() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps.reverse();
    comps
}

/// Irreducible: every state reaches every state through the graph of A.
/// A 1x1 zero matrix is treated as reducible (no admissible sequences).
pub fn is_irreducible(a: &NonnegMatrix) -> bool {
    if a.dim() == 0 {
        return false;
    }
    if a.dim() == 1 {
        return !a.get(0, 0).is_zero();
    }
    strongly_connected_components(a).len() == 1
}

/// Period of an irreducible matrix: gcd of cycle lengths, computed as the
/// gcd of `level[u] + 1 - level[v]` over all edges u -> v of a BFS tree.
pub fn period(a: &NonnegMatrix) -> Result<usize> {
    if !is_irreducible(a) {
        return Err(ShiftError::Reducible("period is defined for irreducible matrices".into()));
    }
    let n = a.dim();
    let adj = adjacency(a);
    let mut level = vec![i64::MIN; n];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut g: i64 = 0;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if level[v] == i64::MIN {
                level[v] = level[u] + 1;
                queue.push_back(v);
            } else {
                g = gcd64(g, (level[u] + 1 - level[v]).abs());
            }
        }
    }
    // Re-scan all edges (BFS tree edges of cross levels already covered,
    // but tree edges give 0 which gcd ignores).
    for u in 0..n {
        for &v in &adj[u] {
            g = gcd64(g, (level[u] + 1 - level[v]).abs());
        }
    }
    Ok(g.max(1) as usize)
}

fn gcd64(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Cyclic classes of an irreducible period-p matrix: D_b = vertices at BFS
/// distance ≡ b-1 (mod p) from vertex 0.
pub fn cyclic_decomposition(a: &NonnegMatrix) -> Result<CyclicDecomposition> {
    let p = period(a)?;
    let n = a.dim();
    let adj = adjacency(a);
    let mut level = vec![usize::MAX; n];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); p];
    for v in 0..n {
        classes[level[v] % p].push(v);
    }
    // Structural check: every edge must go D_b -> D_{b+1 mod p}.
    for u in 0..n {
        for &v in &adj[u] {
            if (level[u] + 1) % p != level[v] % p {
                return Err(ShiftError::Invalid("cyclic class structure violated".into()));
            }
        }
    }
    let permutation: Vec<usize> = classes.iter().flatten().copied().collect();
    let ap = a.pow(p);
    let power_blocks: Vec<NonnegMatrix> = classes.iter().map(|c| ap.submatrix(c)).collect();
    // A^p must vanish off the diagonal blocks.
    let class_of = {
        let mut c = vec![0usize; n];
        for (b, cl) in classes.iter().enumerate() {
            for &v in cl {
                c[v] = b;
            }
        }
        c
    };
    for i in 0..n {
        for j in 0..n {
            if !ap.get(i, j).is_zero() && class_of[i] != class_of[j] {
                return Err(ShiftError::Invalid("A^p not block diagonal on cyclic classes".into()));
            }
        }
    }
    Ok(CyclicDecomposition { period: p, classes, permutation, power_blocks })
}

/// Power iteration on a dense f64 matrix, converging to the dominant
/// eigenvalue/eigenvector. Requires a primitive (irreducible aperiodic)
/// matrix for convergence.
fn power_iteration(m: &[Vec<f64>], tol: f64) -> Result<(f64, Vec<f64>)> {
    let n = m.len();
    let mut v = vec![1.0f64; n];
    let mut lambda = 0.0f64;
    for _ in 0..MAX_ITERS {
        let mut w = vec![0.0f64; n];
        for i in 0..n {
            let row = &m[i];
            let mut s = 0.0;
            for j in 0..n {
                s += row[j] * v[j];
            }
            w[i] = s;
        }
        let norm = w.iter().cloned().fold(0.0f64, f64::max);
        if norm == 0.0 {
            return Err(ShiftError::Invalid("matrix is nilpotent along iteration".into()));
        }
        let new_lambda = norm;
        for x in &mut w {
            *x /= norm;
        }
        // Residual check in addition to eigenvalue stabilization.
        let mut resid = 0.0f64;
        for i in 0..n {
            let mut s = 0.0;
            for j in 0..n {
                s += m[i][j] * w[j];
            }
            resid = resid.max((s - new_lambda * w[i]).abs());
        }
        let done = (new_lambda - lambda).abs() <= tol * new_lambda.max(1.0)
            && resid <= tol.max(1e-15) * new_lambda.max(1.0) * 10.0;
        lambda = new_lambda;
        v = w;
        if done {
            return Ok((lambda, v));
        }
    }
    Err(ShiftError::NonConvergence(format!(
        "power iteration did not reach tol {tol} in {MAX_ITERS} iterations"
    )))
}

fn transpose_f64(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = m.len();
    (0..n).map(|j| (0..n).map(|i| m[i][j]).collect()).collect()
}

/// Dominant eigenvalue and eigenvectors of an irreducible matrix of any
/// period. For period p > 1 the iteration runs on the aperiodic diagonal
/// blocks of A^p and the eigenvector pieces are propagated through the
/// cyclic structure via A V = λ V.
pub fn perron(a: &NonnegMatrix, tol: f64) -> Result<SpectralData> {
    if !is_irreducible(a) {
        return Err(ShiftError::Reducible("Perron data requires an irreducible matrix".into()));
    }
    let p = period(a)?;
    let n = a.dim();
    if p == 1 {
        let m = a.to_f64();
        let (lambda, right) = power_iteration(&m, tol)?;
        let (_, left) = power_iteration(&transpose_f64(&m), tol)?;
        return Ok(normalize(lambda, left, right, 1, tol));
    }
    let dec = cyclic_decomposition(a)?;
    let af = a.to_f64();
    // Eigen-data of each aperiodic block of A^p.
    let mut lambda_p = 0.0f64;
    let mut rights: Vec<Vec<f64>> = Vec::new();
    let mut lefts: Vec<Vec<f64>> = Vec::new();
    for (b, blk) in dec.power_blocks.iter().enumerate() {
        let bf = blk.to_f64();
        let (lp, r) = power_iteration(&bf, tol)?;
        let (_, l) = power_iteration(&transpose_f64(&bf), tol)?;
        if b == 0 {
            lambda_p = lp;
        } else if (lp - lambda_p).abs() > 1e-6 * lambda_p.max(1.0) {
            return Err(ShiftError::Invalid("cyclic blocks of A^p disagree on spectral radius".into()));
        }
        rights.push(r);
        lefts.push(l);
    }
    let lambda = lambda_p.powf(1.0 / p as f64);
    // Scale the per-class pieces so that A V = λ V and U A = λ U hold:
    //   (A V)|_{D_b} = A_{b,b+1} V|_{D_{b+1}} = λ V|_{D_b}.
    let mut right = vec![0.0f64; n];
    let mut left = vec![0.0f64; n];
    for (i, &orig) in dec.classes[0].iter().enumerate() {
        right[orig] = rights[0][i];
        left[orig] = lefts[0][i];
    }
    // Fix V on D_{b+1} from V on D_b:  V|_{D_{b+1}} must satisfy
    // A_{b,b+1} V|_{D_{b+1}} = λ V|_{D_b}; the block eigenvector of B_{b+1}
    // is parallel to the true piece, so one ratio fixes the scale.
    for b in 0..p - 1 {
        let cls_b = &dec.classes[b];
        let cls_n = &dec.classes[b + 1];
        // y = A_{b,b+1} * rights[b+1] in original coordinates.
        let mut scale = None;
        for (ib, &u) in cls_b.iter().enumerate() {
            let mut s = 0.0;
            for (jn, &w) in cls_n.iter().enumerate() {
                s += af[u][w] * rights[b + 1][jn];
            }
            if s.abs() > 1e-300 {
                let target = lambda * right[u];
                let _ = ib;
                scale = Some(target / s);
                break;
            }
        }
        let sc = scale.ok_or_else(|| ShiftError::Invalid("zero coupling between cyclic classes".into()))?;
        for (jn, &w) in cls_n.iter().enumerate() {
            right[w] = rights[b + 1][jn] * sc;
        }
        // U|_{D_{b+1}}: U A = λ U gives (U A)|_{D_{b+1}} = U|_{D_b} A_{b,b+1}
        // = λ U|_{D_{b+1}}.
        let mut uscale = None;
        for (jn, &w) in cls_n.iter().enumerate() {
            let mut s = 0.0;
            for &u in cls_b.iter() {
                s += left[u] * af[u][w];
            }
            if lefts[b + 1][jn].abs() > 1e-300 && s.abs() > 1e-300 {
                uscale = Some(s / (lambda * lefts[b + 1][jn]));
                break;
            }
        }
        let usc = uscale.ok_or_else(|| ShiftError::Invalid("zero coupling between cyclic classes".into()))?;
        for (jn, &w) in cls_n.iter().enumerate() {
            left[w] = lefts[b + 1][jn] * usc;
        }
    }
    Ok(normalize(lambda, left, right, p, tol))
}

fn normalize(lambda: f64, mut left: Vec<f64>, mut right: Vec<f64>, period: usize, tol: f64) -> SpectralData {
    let vmax = right.iter().cloned().fold(0.0f64, f64::max);
    for x in &mut right {
        *x /= vmax;
    }
    let dot: f64 = left.iter().zip(&right).map(|(u, v)| u * v).sum();
    for x in &mut left {
        *x /= dot;
    }
    SpectralData { lambda, left, right, period, tol }
}

/// The p complex eigenvectors of modulus λ for an irreducible period-p
/// matrix: the Perron vector twisted by p-th roots of unity on the cyclic
/// classes. `j` ranges over 1..=p.
pub fn rotated_eigenvectors(
    spec: &SpectralData,
    dec: &CyclicDecomposition,
    j: usize,
) -> Result<(Complex64, Vec<Complex64>)> {
    let p = dec.period;
    if j == 0 || j > p {
        return Err(ShiftError::Invalid(format!("rotation index {j} out of range 1..={p}")));
    }
    let n: usize = dec.classes.iter().map(|c| c.len()).sum();
    let mut v = vec![Complex64::zero(); n];
    let theta = 2.0 * std::f64::consts::PI * (j as f64 - 1.0) / p as f64;
    // Eigenvalue λ e^{iθ}; eigenvector multiplies the class D_b piece by
    // e^{iθ(b-1)} conjugated so that A v = λ e^{iθ} v.
    for (b, cls) in dec.classes.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -(theta * b as f64));
        for &orig in cls {
            v[orig] = phase * spec.right[orig];
        }
    }
    Ok((Complex64::from_polar(spec.lambda, theta), v))
}

/// Rank-one limit `lim A^n / λ^n` entrywise for a primitive matrix:
/// the matrix (v_i u_j). For period p > 1 this is the Cesàro limit
/// `lim (1/p) Σ_{r<p} A^{n+r}/λ^{n+r}`.
pub fn limit_matrix(spec: &SpectralData) -> Vec<Vec<f64>> {
    let n = spec.right.len();
    (0..n)
        .map(|i| (0..n).map(|j| spec.right[i] * spec.left[j]).collect())
        .collect()
}

/// Stochasticization: stationary Markov chain on the graph of A with
/// P_{ij} = a_{ij} v_j / (λ v_i) and stationary distribution p_i = u_i v_i.
pub fn stochasticize(a: &NonnegMatrix, spec: &SpectralData) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.dim();
    let p: Vec<f64> = (0..n).map(|i| spec.left[i] * spec.right[i]).collect();
    let pm: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| biguint_to_f64(a.get(i, j)) * spec.right[j] / (spec.lambda * spec.right[i]))
                .collect()
        })
        .collect();
    (p, pm)
}

/// Spectral radius of an arbitrary nonnegative matrix: the max of the
/// Perron roots of its irreducible diagonal blocks.
pub fn spectral_radius(a: &NonnegMatrix, tol: f64) -> Result<f64> {
    if a.dim() == 0 || a.is_zero() {
        return Ok(0.0);
    }
    if is_irreducible(a) {
        return Ok(perron(a, tol)?.lambda);
    }
    let comps = strongly_connected_components(a);
    let mut radius = 0.0f64;
    for c in &comps {
        let blk = a.submatrix(c);
        if blk.is_zero() {
            continue;
        }
        radius = radius.max(perron(&blk, tol)?.lambda);
    }
    Ok(radius)
}

/// Block upper-triangular form by SCC condensation, with per-block spectral
/// radii and the dominant block if its radius strictly exceeds all others.
pub fn block_triangularize(a: &NonnegMatrix, tol: f64) -> Result<BlockTriangularForm> {
    let comps = strongly_connected_components(a);
    let permutation: Vec<usize> = comps.iter().flatten().copied().collect();
    // Check triangularity: edges must go from earlier to later components
    // in topological order (or stay inside one).
    let n = a.dim();
    let mut comp_of = vec![0usize; n];
    for (b, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = b;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !a.get(i, j).is_zero() && comp_of[i] > comp_of[j] {
                return Err(ShiftError::Invalid("SCC order not topological".into()));
            }
        }
    }
    let diagonal_blocks: Vec<NonnegMatrix> = comps.iter().map(|c| a.submatrix(c)).collect();
    let mut radii = Vec::with_capacity(comps.len());
    for blk in &diagonal_blocks {
        if blk.is_zero() {
            radii.push(0.0);
        } else {
            radii.push(perron(blk, tol)?.lambda);
        }
    }
    let mut dominant: Option<usize> = None;
    let mut best = f64::NEG_INFINITY;
    let mut strict = false;
    for (i, &r) in radii.iter().enumerate() {
        if r > best * (1.0 + 1e-9) {
            best = r;
            dominant = Some(i);
            strict = true;
        } else if (r - best).abs() <= 1e-9 * best.abs().max(1.0) {
            strict = false;
        }
    }
    let dominant_block = if strict && best > 0.0 { dominant } else { None };
    Ok(BlockTriangularForm { components: comps, permutation, diagonal_blocks, spectral_radii: radii, dominant_block })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<u64>]) -> NonnegMatrix {
        NonnegMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn scc_and_irreducibility() {
        let golden = m(&[vec![1, 1], vec![1, 0]]);
        assert!(is_irreducible(&golden));
        let upper = m(&[vec![1, 1], vec![0, 1]]);
        assert!(!is_irreducible(&upper));
        assert_eq!(strongly_connected_components(&upper).len(), 2);
        assert!(!is_irreducible(&m(&[vec![0]])));
        assert!(is_irreducible(&m(&[vec![3]])));
    }

    #[test]
    fn period_detection() {
        assert_eq!(period(&m(&[vec![1, 1], vec![1, 0]])).unwrap(), 1);
        // Pure 2-cycle.
        assert_eq!(period(&m(&[vec![0, 1], vec![1, 0]])).unwrap(), 2);
        // 3-cycle.
        assert_eq!(period(&m(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]])).unwrap(), 3);
        // 3-cycle plus a chord making gcd(3, 2) = 1... chord 0->2 gives cycle 0->2->0? no edge 2->0 exists; 0->2->0 length 2 with edge 2->0: gcd(3,2)=1.
        assert_eq!(
            period(&m(&[vec![0, 1, 1], vec![0, 0, 1], vec![1, 0, 0]])).unwrap(),
            1
        );
    }

    #[test]
    fn perron_golden_mean() {
        let a = m(&[vec![1, 1], vec![1, 0]]);
        let s = perron(&a, 1e-13).unwrap();
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((s.lambda - phi).abs() < 1e-10);
        // Right eigenvector proportional to (φ, 1); max-normalized -> (1, 1/φ).
        assert!((s.right[0] - 1.0).abs() < 1e-9);
        assert!((s.right[1] - 1.0 / phi).abs() < 1e-9);
        // UV = 1.
        let dot: f64 = s.left.iter().zip(&s.right).map(|(u, v)| u * v).sum();
        assert!((dot - 1.0).abs() < 1e-12);
        // u_i v_i should be the stationary distribution (φ²/(1+φ²), 1/(1+φ²)).
        let p0 = s.left[0] * s.right[0];
        assert!((p0 - phi * phi / (1.0 + phi * phi)).abs() < 1e-9);
    }

    #[test]
    fn perron_periodic_matrix() {
        // Period 2: bipartite graph with λ = sqrt(2).
        let a = m(&[vec![0, 0, 1, 1], vec![0, 0, 1, 0], vec![1, 1, 0, 0], vec![1, 0, 0, 0]]);
        assert_eq!(period(&a).unwrap(), 2);
        let s = perron(&a, 1e-13).unwrap();
        // Check A v = λ v and u A = λ u directly.
        let af = a.to_f64();
        for i in 0..4 {
            let av: f64 = (0..4).map(|j| af[i][j] * s.right[j]).sum();
            assert!((av - s.lambda * s.right[i]).abs() < 1e-8, "row {i}");
            let ua: f64 = (0..4).map(|j| s.left[j] * af[j][i]).sum();
            assert!((ua - s.lambda * s.left[i]).abs() < 1e-8, "col {i}");
        }
        let dot: f64 = s.left.iter().zip(&s.right).map(|(u, v)| u * v).sum();
        assert!((dot - 1.0).abs() < 1e-10);
    }

    #[test]
    fn cyclic_decomposition_blocks() {
        let a = m(&[vec![0, 0, 1, 1], vec![0, 0, 1, 0], vec![1, 1, 0, 0], vec![1, 0, 0, 0]]);
        let d = cyclic_decomposition(&a).unwrap();
        assert_eq!(d.period, 2);
        assert_eq!(d.classes[0], vec![0, 1]);
        assert_eq!(d.classes[1], vec![2, 3]);
        for blk in &d.power_blocks {
            assert!(is_irreducible(blk));
            assert_eq!(period(blk).unwrap(), 1);
        }
    }

    #[test]
    fn rotated_eigenvector_satisfies_relation() {
        let a = m(&[vec![0, 0, 1, 1], vec![0, 0, 1, 0], vec![1, 1, 0, 0], vec![1, 0, 0, 0]]);
        let s = perron(&a, 1e-13).unwrap();
        let d = cyclic_decomposition(&a).unwrap();
        let af = a.to_f64();
        for j in 1..=2 {
            let (mu, v) = rotated_eigenvectors(&s, &d, j).unwrap();
            for i in 0..4 {
                let mut av = Complex64::zero();
                for k in 0..4 {
                    av += af[i][k] * v[k];
                }
                let diff = (av - mu * v[i]).norm();
                assert!(diff < 1e-8, "j={j} row {i}: {diff}");
            }
        }
    }

    #[test]
    fn limit_matrix_matches_high_power() {
        let a = m(&[vec![1, 1], vec![1, 0]]);
        let s = perron(&a, 1e-13).unwrap();
        let lim = limit_matrix(&s);
        let k = 60;
        let ak = a.pow(k);
        let lk = s.lambda.powi(k as i32);
        for i in 0..2 {
            for j in 0..2 {
                let approx = biguint_to_f64(ak.get(i, j)) / lk;
                assert!((approx - lim[i][j]).abs() < 1e-9, "({i},{j})");
            }
        }
    }

    #[test]
    fn stochasticization_is_stochastic_and_stationary() {
        let a = m(&[vec![1, 1], vec![1, 0]]);
        let s = perron(&a, 1e-13).unwrap();
        let (p, pm) = stochasticize(&a, &s);
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        for row in &pm {
            assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
        // p P = p.
        for j in 0..2 {
            let pj: f64 = (0..2).map(|i| p[i] * pm[i][j]).sum();
            assert!((pj - p[j]).abs() < 1e-10);
        }
    }

    #[test]
    fn block_triangular_reducible() {
        // [[1,1],[0,1]]: two SCCs, both radius 1, no dominant block.
        let a = m(&[vec![1, 1], vec![0, 1]]);
        let f = block_triangularize(&a, 1e-13).unwrap();
        assert_eq!(f.components.len(), 2);
        assert!((f.spectral_radii[0] - 1.0).abs() < 1e-10);
        assert!((f.spectral_radii[1] - 1.0).abs() < 1e-10);
        assert_eq!(f.dominant_block, None);

        // Golden-mean block over a fixed point: dominant block exists.
        let b = m(&[vec![1, 1, 1], vec![1, 0, 0], vec![0, 0, 1]]);
        let f = block_triangularize(&b, 1e-13).unwrap();
        assert_eq!(f.components.len(), 2);
        let dom = f.dominant_block.unwrap();
        assert!((f.spectral_radii[dom] - (1.0 + 5.0f64.sqrt()) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn spectral_radius_handles_zero_and_reducible() {
        assert_eq!(spectral_radius(&NonnegMatrix::zeros(3), 1e-13).unwrap(), 0.0);
        let a = m(&[vec![2, 1], vec![0, 3]]);
        assert!((spectral_radius(&a, 1e-13).unwrap() - 3.0).abs() < 1e-10);
    }
}
