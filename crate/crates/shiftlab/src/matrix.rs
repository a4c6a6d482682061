//! Exact integer matrices and the basic alphabet/word types.
//!
//! All censuses and cylinder ratios are computed in arbitrary-precision
//! integer arithmetic so that window growth never silently overflows; only
//! the final ratios are rounded to `f64`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Result, ShiftError};

/// A symbol of a finite alphabet, identified by its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(pub usize);

/// Finite ordered alphabet with distinct display tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
}

impl Alphabet {
    pub fn new(tokens: Vec<String>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(ShiftError::Invalid("alphabet must be nonempty".into()));
        }
        for (i, t) in tokens.iter().enumerate() {
            if t.is_empty() || t.contains(',') || t.contains(char::is_whitespace) {
                return Err(ShiftError::Invalid(format!("bad alphabet token {:?}", t)));
            }
            if tokens[..i].contains(t) {
                return Err(ShiftError::Invalid(format!("duplicate alphabet token {:?}", t)));
            }
        }
        Ok(Alphabet { tokens })
    }

    pub fn of_strs(tokens: &[&str]) -> Result<Self> {
        Alphabet::new(tokens.iter().map(|s| s.to_string()).collect())
    }

    /// Alphabet `{1, 2, ..., n}`.
    pub fn numeric(n: usize) -> Self {
        Alphabet { tokens: (1..=n).map(|i| i.to_string()).collect() }
    }

    pub fn size(&self) -> usize {
        self.tokens.len()
    }

    pub fn token(&self, s: Symbol) -> &str {
        &self.tokens[s.0]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn symbol(&self, token: &str) -> Result<Symbol> {
        self.tokens
            .iter()
            .position(|t| t == token)
            .map(Symbol)
            .ok_or_else(|| ShiftError::Invalid(format!("unknown symbol {:?}", token)))
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.tokens.len()).map(Symbol)
    }

    /// Parse a word. Comma-separated tokens are accepted always; a bare
    /// string is accepted when every character is a single-char token.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ShiftError::Invalid("empty word".into()));
        }
        if s.contains(',') {
            let syms = s
                .split(',')
                .map(|t| self.symbol(t.trim()))
                .collect::<Result<Vec<_>>>()?;
            Word::new(syms)
        } else if let Ok(sym) = self.symbol(s) {
            Word::new(vec![sym])
        } else {
            let syms = s
                .chars()
                .map(|c| self.symbol(&c.to_string()))
                .collect::<Result<Vec<_>>>()?;
            Word::new(syms)
        }
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.symbols()
            .iter()
            .map(|&s| self.token(s))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Nonempty finite word over an alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(ShiftError::Invalid("empty word".into()));
        }
        Ok(Word(symbols))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn first(&self) -> Symbol {
        self.0[0]
    }

    pub fn last(&self) -> Symbol {
        *self.0.last().unwrap()
    }
}

/// Cylinder window: `k` free coordinates to the left of the word and `l`
/// to the right, inside blocks of total length `k + n + l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CylinderSpec {
    pub k: usize,
    pub l: usize,
}

/// How a measure value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureMethod {
    ClosedForm,
    Limit,
    PeriodicLimit,
    Oracle,
}

/// A measure value together with how it was obtained.
#[derive(Debug, Clone)]
pub struct MeasureResult {
    pub value: f64,
    pub method: MeasureMethod,
    /// True when the queried word is not in the language; `value` is 0.
    pub inadmissible: bool,
    /// `(k, l, ratio)` trail for limit methods.
    pub diagnostics: Vec<(usize, usize, f64)>,
}

impl MeasureResult {
    pub fn closed(value: f64) -> Self {
        MeasureResult { value, method: MeasureMethod::ClosedForm, inadmissible: false, diagnostics: vec![] }
    }

    pub fn inadmissible(method: MeasureMethod) -> Self {
        MeasureResult { value: 0.0, method, inadmissible: true, diagnostics: vec![] }
    }
}

/// Dense square matrix with nonnegative arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct NonnegMatrix {
    dim: usize,
    entries: Vec<BigUint>,
}

impl fmt::Debug for NonnegMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "NonnegMatrix {}x{}", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl NonnegMatrix {
    pub fn zeros(dim: usize) -> Self {
        NonnegMatrix { dim, entries: vec![BigUint::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, BigUint::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(ShiftError::Invalid("matrix rows must be square".into()));
        }
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigUint::from(v));
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigUint) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|e| *e <= BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &NonnegMatrix) -> NonnegMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = NonnegMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let e = &mut out.entries[i * n + j];
                    *e += a * b;
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> NonnegMatrix {
        let mut base = self.clone();
        let mut acc = NonnegMatrix::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Sum of all entries (written `|A|` in census formulas).
    pub fn entry_sum(&self) -> BigUint {
        self.entries.iter().sum()
    }

    pub fn trace(&self) -> BigUint {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn row_sums(&self) -> Vec<BigUint> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<BigUint> {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// Row-vector times matrix, exact.
    pub fn vec_mul_left(&self, v: &[BigUint]) -> Vec<BigUint> {
        let n = self.dim;
        (0..n)
            .map(|j| (0..n).map(|i| &v[i] * self.get(i, j)).sum())
            .collect()
    }

    /// Matrix times column-vector, exact.
    pub fn vec_mul_right(&self, v: &[BigUint]) -> Vec<BigUint> {
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> NonnegMatrix {
        let n = self.dim;
        let mut out = NonnegMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Principal submatrix on the given index set (in the given order).
    pub fn submatrix(&self, idx: &[usize]) -> NonnegMatrix {
        let m = idx.len();
        let mut out = NonnegMatrix::zeros(m);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Rectangular block rows×cols, returned as dense row-major f64 — only
    /// used to seed floating-point iterations.
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| biguint_to_f64(self.get(i, j))).collect())
            .collect()
    }

    /// Simultaneously permute rows and columns: entry (i,j) of the result is
    /// entry (perm[i], perm[j]) of self.
    pub fn permuted(&self, perm: &[usize]) -> NonnegMatrix {
        let n = self.dim;
        assert_eq!(perm.len(), n);
        let mut out = NonnegMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(perm[i], perm[j]).clone());
            }
        }
        out
    }
}

/// Dense rectangular matrix with nonnegative arbitrary-precision entries;
/// used for the subset-indexed blocks whose row and column index sets differ.
#[derive(Clone, PartialEq, Eq)]
pub struct RectMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigUint>,
}

impl fmt::Debug for RectMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RectMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RectMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RectMatrix { rows, cols, entries: vec![BigUint::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigUint::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigUint) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: BigUint) {
        self.entries[i * self.cols + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &RectMatrix) -> RectMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RectMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * other.cols + j] += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RectMatrix) -> RectMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e += o;
        }
        out
    }

    pub fn entry_sum(&self) -> BigUint {
        self.entries.iter().sum()
    }

    /// Square rectangular matrix reinterpreted as a NonnegMatrix.
    pub fn to_square(&self) -> Result<NonnegMatrix> {
        if self.rows != self.cols {
            return Err(ShiftError::Invalid("matrix is not square".into()));
        }
        let mut m = NonnegMatrix::zeros(self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        Ok(m)
    }
}

/// Dense square matrix with signed arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix { dim, entries: vec![BigInt::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let e = &mut out.entries[i * n + j];
                    *e += a * b;
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn entry_sum(&self) -> BigInt {
        self.entries.iter().sum()
    }
}

pub fn biguint_to_f64(v: &BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    // BigRational::to_f64 handles magnitudes beyond f64 range by scaling.
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational `num/den` from big naturals, reduced.
pub fn big_ratio(num: BigUint, den: BigUint) -> Result<BigRational> {
    if den.is_zero() {
        return Err(ShiftError::Invalid("zero denominator in census ratio".into()));
    }
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> NonnegMatrix {
        NonnegMatrix::from_rows(&[vec![1, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn power_and_census_golden_mean() {
        let a = golden();
        // Fibonacci structure: A^n = [[F(n+1), F(n)], [F(n), F(n-1)]].
        let a10 = a.pow(10);
        assert_eq!(a10.get(0, 0), &BigUint::from(89u32));
        assert_eq!(a10.get(0, 1), &BigUint::from(55u32));
        assert_eq!(a10.get(1, 1), &BigUint::from(34u32));
        // Words of length 11 = |A^10| summed.
        assert_eq!(a10.entry_sum(), BigUint::from(233u32));
        // Periodic points of period 5: tr(A^5) = Lucas(5) = 11.
        assert_eq!(a.pow(5).trace(), BigUint::from(11u32));
    }

    #[test]
    fn identity_and_zero_power() {
        let a = golden();
        assert_eq!(a.pow(0), NonnegMatrix::identity(2));
        assert_eq!(a.pow(1), a);
    }

    #[test]
    fn row_col_sums_and_vec_mul() {
        let a = NonnegMatrix::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(a.row_sums(), vec![BigUint::from(3u32), BigUint::from(7u32)]);
        assert_eq!(a.col_sums(), vec![BigUint::from(4u32), BigUint::from(6u32)]);
        let v = vec![BigUint::from(1u32), BigUint::from(1u32)];
        assert_eq!(a.vec_mul_left(&v), a.col_sums());
        assert_eq!(a.vec_mul_right(&v), a.row_sums());
    }

    #[test]
    fn int_matrix_signed_trace() {
        let mut b = IntMatrix::zeros(2);
        b.set(0, 0, BigInt::from(2));
        b.set(0, 1, BigInt::from(-1));
        b.set(1, 0, BigInt::from(1));
        b.set(1, 1, BigInt::from(-3));
        let b2 = b.mul(&b);
        assert_eq!(b2.get(0, 0), &BigInt::from(3));
        assert_eq!(b2.trace(), BigInt::from(3 + (-1 + 9)));
    }

    #[test]
    fn alphabet_and_words() {
        let ab = Alphabet::of_strs(&["a", "b"]).unwrap();
        let w = ab.parse_word("a,b,a").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(ab.format_word(&w), "a,b,a");
        let w2 = ab.parse_word("aba").unwrap();
        assert_eq!(w, w2);
        assert!(Alphabet::of_strs(&["x", "x"]).is_err());
        assert!(ab.parse_word("").is_err());
        assert!(ab.parse_word("c").is_err());
    }

    #[test]
    fn submatrix_and_permute() {
        let a = NonnegMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap();
        let s = a.submatrix(&[2, 0]);
        assert_eq!(s.get(0, 0), &BigUint::from(9u32));
        assert_eq!(s.get(0, 1), &BigUint::from(7u32));
        assert_eq!(s.get(1, 0), &BigUint::from(3u32));
        let p = a.permuted(&[1, 0, 2]);
        assert_eq!(p.get(0, 0), &BigUint::from(5u32));
        assert_eq!(p.get(0, 1), &BigUint::from(4u32));
    }
}
