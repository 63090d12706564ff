//! Dense state vectors over a fixed menu of labeled finite-dimensional
//! factors, sparse operators acting on a subset of them, projections and
//! projective measurements.
//!
//! Basis index conventions:
//!
//! | factor   | dim | index meaning                         |
//! |----------|-----|---------------------------------------|
//! | `Path`   | 2   | 0 = `A<B`, 1 = `B<A`                  |
//! | `AgentA` | 6   | `A0..A5`                              |
//! | `AgentB` | 5   | `B1..B5` (index 0 is `B1`)            |
//! | `Target` | 5   | `e1..e5` (index 0 is `e1`)            |
//! | `DetA`   | 2   | 0 = witness `e6` absent, 1 = present  |
//! | `DetB`   | 2   | 0 = witness `e7` absent, 1 = present  |
//!
//! Amplitudes are stored row-major in the order the factors are listed, so
//! the last factor varies fastest.

use std::collections::BTreeMap;
use std::io::{self, Write};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Tolerance for orthonormality and normalization checks.
pub const TOLERANCE: f64 = 1e-12;

/// Amplitudes below this magnitude are omitted from dumps.
pub const DUMP_THRESHOLD: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Path,
    AgentA,
    AgentB,
    Target,
    DetA,
    DetB,
}

impl Factor {
    /// The full switch space in canonical order.
    pub const ALL: [Factor; 6] = [
        Factor::Path,
        Factor::AgentA,
        Factor::AgentB,
        Factor::Target,
        Factor::DetA,
        Factor::DetB,
    ];

    pub fn dim(self) -> usize {
        match self {
            Factor::Path => 2,
            Factor::AgentA => 6,
            Factor::AgentB => 5,
            Factor::Target => 5,
            Factor::DetA | Factor::DetB => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Factor::Path => "path",
            Factor::AgentA => "A",
            Factor::AgentB => "B",
            Factor::Target => "target",
            Factor::DetA => "detA",
            Factor::DetB => "detB",
        }
    }

    /// Human-readable name of basis level `i`.
    pub fn level_name(self, i: usize) -> String {
        match self {
            Factor::Path => if i == 0 { "A<B" } else { "B<A" }.to_string(),
            Factor::AgentA => format!("A{i}"),
            Factor::AgentB => format!("B{}", i + 1),
            Factor::Target => format!("e{}", i + 1),
            Factor::DetA | Factor::DetB => i.to_string(),
        }
    }
}

/// Named basis indices.
pub mod level {
    pub const A_BEFORE_B: usize = 0;
    pub const B_BEFORE_A: usize = 1;

    pub const A0: usize = 0;
    pub const A1: usize = 1;
    pub const A2: usize = 2;
    pub const A3: usize = 3;
    pub const A4: usize = 4;
    pub const A5: usize = 5;

    pub const B1: usize = 0;
    pub const B2: usize = 1;
    pub const B3: usize = 2;
    pub const B4: usize = 3;
    pub const B5: usize = 4;

    pub const E1: usize = 0;
    pub const E2: usize = 1;
    pub const E3: usize = 2;
    pub const E4: usize = 3;
    pub const E5: usize = 4;

    pub const ABSENT: usize = 0;
    pub const PRESENT: usize = 1;
}

fn check_factors(factors: &[Factor]) -> Result<()> {
    for (i, f) in factors.iter().enumerate() {
        if factors[..i].contains(f) {
            return Err(Error::FactorMismatch(format!("factor {} listed twice", f.name())));
        }
    }
    Ok(())
}

fn strides(factors: &[Factor]) -> Vec<usize> {
    let mut s = vec![1; factors.len()];
    for k in (0..factors.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * factors[k + 1].dim();
    }
    s
}

fn total_dim(factors: &[Factor]) -> usize {
    factors.iter().map(|f| f.dim()).product()
}

/// The levels of one product-basis element, looked up by factor.
#[derive(Debug, Clone, Copy)]
pub struct BasisLabel<'a> {
    factors: &'a [Factor],
    digits: &'a [usize],
}

impl BasisLabel<'_> {
    pub fn level(&self, f: Factor) -> Option<usize> {
        self.factors.iter().position(|&g| g == f).map(|k| self.digits[k])
    }

    pub fn is(&self, f: Factor, i: usize) -> bool {
        self.level(f) == Some(i)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    factors: Vec<Factor>,
    amplitudes: Vec<Complex64>,
    norm: f64,
}

impl StateVector {
    pub fn zeros(factors: &[Factor]) -> Result<Self> {
        check_factors(factors)?;
        Ok(StateVector {
            factors: factors.to_vec(),
            amplitudes: vec![Complex64::new(0.0, 0.0); total_dim(factors)],
            norm: 0.0,
        })
    }

    pub fn from_amplitudes(factors: &[Factor], amplitudes: Vec<Complex64>) -> Result<Self> {
        check_factors(factors)?;
        let n = total_dim(factors);
        if amplitudes.len() != n {
            return Err(Error::FactorMismatch(format!(
                "{} amplitudes for a space of dimension {n}",
                amplitudes.len()
            )));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        Ok(StateVector { factors: factors.to_vec(), amplitudes, norm })
    }

    /// The product basis element with the given level on each factor.
    pub fn basis(assignment: &[(Factor, usize)]) -> Result<Self> {
        let factors: Vec<Factor> = assignment.iter().map(|&(f, _)| f).collect();
        let mut s = Self::zeros(&factors)?;
        let digits: Vec<usize> = assignment.iter().map(|&(_, i)| i).collect();
        let idx = s.index_of(&digits)?;
        s.amplitudes[idx] = Complex64::new(1.0, 0.0);
        s.norm = 1.0;
        Ok(s)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn norm_sqr(&self) -> f64 {
        self.norm * self.norm
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= TOLERANCE
    }

    pub fn index_of(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.factors.len() {
            return Err(Error::FactorMismatch(format!(
                "{} levels given for {} factors",
                digits.len(),
                self.factors.len()
            )));
        }
        let mut idx = 0;
        for (&f, &d) in self.factors.iter().zip(digits) {
            if d >= f.dim() {
                return Err(Error::IndexOutOfRange { factor: f.name(), index: d, dim: f.dim() });
            }
            idx = idx * f.dim() + d;
        }
        Ok(idx)
    }

    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut d = vec![0; self.factors.len()];
        for k in (0..self.factors.len()).rev() {
            let dim = self.factors[k].dim();
            d[k] = index % dim;
            index /= dim;
        }
        d
    }

    /// Amplitude of a basis element given as `(factor, level)` pairs in any order.
    pub fn amplitude(&self, assignment: &[(Factor, usize)]) -> Result<Complex64> {
        let mut digits = vec![usize::MAX; self.factors.len()];
        for &(f, i) in assignment {
            let k = self.position(f)?;
            digits[k] = i;
        }
        if digits.contains(&usize::MAX) {
            return Err(Error::FactorMismatch("amplitude lookup must name every factor".into()));
        }
        Ok(self.amplitudes[self.index_of(&digits)?])
    }

    fn position(&self, f: Factor) -> Result<usize> {
        self.factors
            .iter()
            .position(|&g| g == f)
            .ok_or_else(|| Error::FactorMismatch(format!("state has no factor {}", f.name())))
    }

    pub fn normalized(&self) -> Result<Self> {
        if self.norm == 0.0 {
            return domain("cannot normalize the zero vector");
        }
        Ok(self.scaled(Complex64::new(1.0 / self.norm, 0.0)))
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        let amplitudes: Vec<Complex64> = self.amplitudes.iter().map(|a| a * z).collect();
        StateVector::from_amplitudes(&self.factors, amplitudes).expect("same shape")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let amplitudes = self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a + b).collect();
        StateVector::from_amplitudes(&self.factors, amplitudes)
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.factors != other.factors {
            return Err(Error::FactorMismatch("states live on different factor lists".into()));
        }
        Ok(())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.same_space(other)?;
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// Largest amplitude-wise distance to another state on the same factors.
    pub fn max_distance(&self, other: &Self) -> Result<f64> {
        self.same_space(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Tensor product; the factor lists must be disjoint.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        check_factors(&factors)?;
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        StateVector::from_amplitudes(&factors, amplitudes)
    }

    /// The same vector with its factors listed in `order`.
    pub fn reordered(&self, order: &[Factor]) -> Result<Self> {
        check_factors(order)?;
        if order.len() != self.factors.len() || order.iter().any(|f| !self.factors.contains(f)) {
            return Err(Error::FactorMismatch("reordering must use the same factors".into()));
        }
        let perm: Vec<usize> = order.iter().map(|&f| self.position(f).unwrap()).collect();
        let mut out = StateVector::zeros(order)?;
        for (i, a) in self.amplitudes.iter().enumerate() {
            let d = self.digits_of(i);
            let nd: Vec<usize> = perm.iter().map(|&k| d[k]).collect();
            let j = out.index_of(&nd)?;
            out.amplitudes[j] = *a;
        }
        out.norm = self.norm;
        Ok(out)
    }

    /// `(<b| (x) 1) |self>`: contracts `b`'s factors, leaving the rest in their
    /// original order.
    pub fn partial_inner(&self, b: &StateVector) -> Result<StateVector> {
        let pos: Vec<usize> = b.factors.iter().map(|&f| self.position(f)).collect::<Result<_>>()?;
        let rest: Vec<Factor> = self.factors.iter().copied().filter(|f| !b.factors.contains(f)).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); total_dim(&rest)];
        let rest_strides = strides(&rest);
        let b_strides = strides(&b.factors);
        for (i, a) in self.amplitudes.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let d = self.digits_of(i);
            let bi: usize = pos.iter().zip(&b_strides).map(|(&k, &s)| d[k] * s).sum();
            let coef = b.amplitudes[bi];
            if coef.norm_sqr() == 0.0 {
                continue;
            }
            let mut ri = 0;
            let mut r = 0;
            for (k, f) in self.factors.iter().enumerate() {
                if !b.factors.contains(f) {
                    ri += d[k] * rest_strides[r];
                    r += 1;
                }
            }
            out[ri] += coef.conj() * a;
        }
        StateVector::from_amplitudes(&rest, out)
    }

    /// Reduced density matrix of one factor, row-major `dim x dim`.
    pub fn reduced_density_matrix(&self, f: Factor) -> Result<Vec<Complex64>> {
        let k = self.position(f)?;
        let n = f.dim();
        let stride = strides(&self.factors)[k];
        let mut rho = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..self.dim() {
            // i runs over the environment with the factor at level 0
            if (i / stride) % n != 0 {
                continue;
            }
            for p in 0..n {
                let ap = self.amplitudes[i + p * stride];
                for q in 0..n {
                    rho[p * n + q] += ap * self.amplitudes[i + q * stride].conj();
                }
            }
        }
        Ok(rho)
    }

    /// Von Neumann entropy (nats) of the reduced state of `f`, computed on the
    /// normalized vector.
    pub fn entanglement_entropy(&self, f: Factor) -> Result<f64> {
        let s = self.normalized()?;
        let n = f.dim();
        let rho = s.reduced_density_matrix(f)?;
        let m = DMatrix::from_row_slice(n, n, &rho);
        let eig = SymmetricEigen::new(m);
        Ok(eig
            .eigenvalues
            .iter()
            .filter(|&&l| l > 0.0)
            .map(|&l| -l * l.ln())
            .sum())
    }

    /// The pure state of factor `f` when the vector is a product across `f`
    /// and the rest, up to a global phase; `None` if it is entangled.
    pub fn factor_state(&self, f: Factor) -> Result<Option<StateVector>> {
        if self.entanglement_entropy(f)? > TOLERANCE {
            return Ok(None);
        }
        let k = self.position(f)?;
        let n = f.dim();
        let stride = strides(&self.factors)[k];
        // pick the environment element carrying the most weight
        let best = (0..self.dim())
            .filter(|i| (i / stride) % n == 0)
            .max_by(|&i, &j| {
                let wi: f64 = (0..n).map(|p| self.amplitudes[i + p * stride].norm_sqr()).sum();
                let wj: f64 = (0..n).map(|p| self.amplitudes[j + p * stride].norm_sqr()).sum();
                wi.total_cmp(&wj)
            })
            .expect("non-empty space");
        let v: Vec<Complex64> = (0..n).map(|p| self.amplitudes[best + p * stride]).collect();
        Ok(Some(StateVector::from_amplitudes(&[f], v)?.normalized()?))
    }

    /// Iterate `(label, amplitude)` over all basis elements.
    pub fn for_each_label(&self, mut visit: impl FnMut(BasisLabel<'_>, Complex64)) {
        for (i, a) in self.amplitudes.iter().enumerate() {
            let d = self.digits_of(i);
            visit(BasisLabel { factors: &self.factors, digits: &d }, *a);
        }
    }

    /// CSV dump of amplitudes above [`DUMP_THRESHOLD`]: one column per factor
    /// level name, then `re,im`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let header: Vec<&str> = self.factors.iter().map(|f| f.name()).collect();
        writeln!(w, "{},re,im", header.join(","))?;
        for (i, a) in self.amplitudes.iter().enumerate() {
            if a.norm() <= DUMP_THRESHOLD {
                continue;
            }
            let d = self.digits_of(i);
            let labels: Vec<String> = self.factors.iter().zip(&d).map(|(f, &k)| f.level_name(k)).collect();
            writeln!(w, "{},{:.16e},{:.16e}", labels.join(","), a.re, a.im)?;
        }
        Ok(())
    }
}

/// A linear map on the product of `factors`, listed as
/// `(input index, output index, amplitude)` triples over the local product
/// basis. Inputs with no triple are sent to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    factors: Vec<Factor>,
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseOperator {
    pub fn new(factors: &[Factor], entries: Vec<(usize, usize, Complex64)>) -> Result<Self> {
        check_factors(factors)?;
        let n = total_dim(factors);
        if let Some(&(i, o, _)) = entries.iter().find(|&&(i, o, _)| i >= n || o >= n) {
            return Err(Error::FactorMismatch(format!(
                "operator triple ({i}, {o}) outside local dimension {n}"
            )));
        }
        Ok(SparseOperator { factors: factors.to_vec(), entries })
    }

    pub fn identity(factors: &[Factor]) -> Result<Self> {
        let n = total_dim(factors);
        Self::new(factors, (0..n).map(|i| (i, i, Complex64::new(1.0, 0.0))).collect())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn local_dim(&self) -> usize {
        total_dim(&self.factors)
    }

    /// Local index of a basis element given as `(factor, level)` pairs in
    /// the operator's factor order.
    pub fn local_index(factors: &[Factor], levels: &[usize]) -> usize {
        factors.iter().zip(levels).fold(0, |acc, (f, &l)| acc * f.dim() + l)
    }

    fn columns(&self) -> BTreeMap<usize, BTreeMap<usize, Complex64>> {
        let mut cols: BTreeMap<usize, BTreeMap<usize, Complex64>> = BTreeMap::new();
        for &(i, o, a) in &self.entries {
            *cols.entry(i).or_default().entry(o).or_insert(Complex64::new(0.0, 0.0)) += a;
        }
        cols
    }

    /// Largest deviation of the Gram matrix of the listed input columns from
    /// the identity.
    pub fn isometry_defect(&self) -> f64 {
        let cols: Vec<BTreeMap<usize, Complex64>> = self.columns().into_values().collect();
        let mut worst: f64 = 0.0;
        for (j, cj) in cols.iter().enumerate() {
            for (k, ck) in cols.iter().enumerate().skip(j) {
                let g: Complex64 = cj
                    .iter()
                    .filter_map(|(o, a)| ck.get(o).map(|b| a.conj() * b))
                    .sum();
                let target = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }

    /// Whether the operator is an isometry on the span of its listed inputs.
    pub fn is_isometry(&self) -> bool {
        self.isometry_defect() <= TOLERANCE
    }

    /// Dense matrix on the full space of `state_factors` (row = output,
    /// column = input), row-major. Built straight from the triples.
    pub fn to_dense(&self, state_factors: &[Factor]) -> Result<Vec<Complex64>> {
        check_factors(state_factors)?;
        let n = total_dim(state_factors);
        let pos: Vec<usize> = self
            .factors
            .iter()
            .map(|f| {
                state_factors.iter().position(|g| g == f).ok_or_else(|| {
                    Error::FactorMismatch(format!("operator factor {} missing from space", f.name()))
                })
            })
            .collect::<Result<_>>()?;
        let dims: Vec<usize> = state_factors.iter().map(|f| f.dim()).collect();
        let mut m = vec![Complex64::new(0.0, 0.0); n * n];
        let mut digits = vec![0usize; dims.len()];
        for col in 0..n {
            let mut r = col;
            for k in (0..dims.len()).rev() {
                digits[k] = r % dims[k];
                r /= dims[k];
            }
            let local_in = pos.iter().fold(0, |acc, &p| acc * dims[p] + digits[p]);
            for &(_, o, a) in self.entries.iter().filter(|e| e.0 == local_in) {
                let mut out = digits.clone();
                let mut rem = o;
                for &p in pos.iter().rev() {
                    out[p] = rem % dims[p];
                    rem /= dims[p];
                }
                let row = out.iter().zip(&dims).fold(0, |acc, (&d, &k)| acc * k + d);
                m[row * n + col] += a;
            }
        }
        Ok(m)
    }
}

/// Apply `op` to the factors it names, identity on the rest.
pub fn apply(op: &SparseOperator, s: &StateVector) -> Result<StateVector> {
    let pos: Vec<usize> = op
        .factors
        .iter()
        .map(|&f| {
            s.factors.iter().position(|&g| g == f).ok_or_else(|| {
                Error::FactorMismatch(format!("operator factor {} missing from state", f.name()))
            })
        })
        .collect::<Result<_>>()?;
    let g_strides = strides(&s.factors);
    let l_dims: Vec<usize> = op.factors.iter().map(|f| f.dim()).collect();
    let n_local = op.local_dim();

    // global offset of every local basis element
    let offsets: Vec<usize> = (0..n_local)
        .map(|mut l| {
            let mut off = 0;
            for k in (0..pos.len()).rev() {
                off += (l % l_dims[k]) * g_strides[pos[k]];
                l /= l_dims[k];
            }
            off
        })
        .collect();

    let mut by_input: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); n_local];
    for &(i, o, a) in &op.entries {
        by_input[i].push((o, a));
    }

    let mut out = vec![Complex64::new(0.0, 0.0); s.dim()];
    for (i, a) in s.amplitudes.iter().enumerate() {
        if a.norm_sqr() == 0.0 {
            continue;
        }
        let mut l = 0;
        for (k, &p) in pos.iter().enumerate() {
            l = l * l_dims[k] + (i / g_strides[p]) % l_dims[k];
        }
        let base = i - offsets[l];
        for &(o, amp) in &by_input[l] {
            out[base + offsets[o]] += amp * a;
        }
    }
    StateVector::from_amplitudes(&s.factors, out)
}

/// Zero every amplitude whose label fails `keep`. Returns the unnormalized
/// projected state and its squared norm.
pub fn project<P>(s: &StateVector, keep: P) -> (StateVector, f64)
where
    P: Fn(&BasisLabel<'_>) -> bool,
{
    let mut amps = s.amplitudes.clone();
    for (i, a) in amps.iter_mut().enumerate() {
        let d = s.digits_of(i);
        if !keep(&BasisLabel { factors: &s.factors, digits: &d }) {
            *a = Complex64::new(0.0, 0.0);
        }
    }
    let p = StateVector::from_amplitudes(&s.factors, amps).expect("same shape");
    let prob = p.norm_sqr();
    (p, prob)
}

/// One outcome of a projective measurement.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub probability: f64,
    /// `|b> (x) residual`, normalized, in the measured state's factor order.
    pub collapsed: Option<StateVector>,
    /// Normalized state of the unmeasured factors.
    pub residual: Option<StateVector>,
}

#[derive(Debug, Clone)]
pub struct Measurement {
    pub outcomes: Vec<MeasurementOutcome>,
    /// Weight outside the span of the basis.
    pub remainder: f64,
}

/// Measure the factors spanned by `basis` (orthonormal, all on the same
/// factor list) and report Born probabilities with collapsed states.
pub fn measure_in_basis(s: &StateVector, basis: &[StateVector]) -> Result<Measurement> {
    let Some(first) = basis.first() else {
        return Err(Error::FactorMismatch("empty measurement basis".into()));
    };
    let mut defect: f64 = 0.0;
    for (j, bj) in basis.iter().enumerate() {
        if bj.factors != first.factors {
            return Err(Error::FactorMismatch("basis vectors on different factors".into()));
        }
        for bk in &basis[j..] {
            let g = bj.inner(bk)?;
            let target = if std::ptr::eq(bj, bk) { 1.0 } else { 0.0 };
            defect = defect.max((g - target).norm());
        }
    }
    if defect > TOLERANCE {
        return Err(Error::NotOrthonormal(defect));
    }

    let mut outcomes = Vec::with_capacity(basis.len());
    let mut total = 0.0;
    for b in basis {
        let r = s.partial_inner(b)?;
        let p = r.norm_sqr();
        total += p;
        let (collapsed, residual) = if p > 0.0 {
            let res = r.normalized()?;
            let col = b.tensor(&res)?.reordered(&s.factors)?;
            (Some(col), Some(res))
        } else {
            (None, None)
        };
        outcomes.push(MeasurementOutcome { probability: p, collapsed, residual });
    }
    Ok(Measurement { outcomes, remainder: (s.norm_sqr() - total).max(0.0) })
}

/// Computational basis of the given factors.
pub fn computational_basis(factors: &[Factor]) -> Result<Vec<StateVector>> {
    let n = total_dim(factors);
    (0..n)
        .map(|i| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[i] = Complex64::new(1.0, 0.0);
            StateVector::from_amplitudes(factors, e)
        })
        .collect()
}
