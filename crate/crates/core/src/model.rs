//! Anyon model data (F, R, twists) over a multiplicity-free fusion ring, and
//! the coherence and modularity checks on it.
//!
//! The model is skeletal: unitors are identities, and duality maps never
//! appear as data. They enter only through the quantum dimensions used by
//! [`quantum_trace`] and through the F and R tables.
//!
//! Index conventions:
//!
//! * `F^{abc}_d[e, f]` is the coefficient taking the `(ab)c` tree with
//!   intermediate `e` to the `a(bc)` tree with intermediate `f`, at total
//!   charge `d`. It may be nonzero only if `N_{ab}^e N_{ec}^d N_{bc}^f N_{af}^d`
//!   is nonzero.
//! * `R^{ab}_c` is the exchange phase of `a ⊗ b` in channel `c`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion_ring::{check_permutation, fp_dimensions, validate_ring, FusionRing, Label};
use crate::linalg::{ComplexMatrix, C64};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Six labels `(a, b, c, d, e, f)` addressing `F^{abc}_d[e, f]`.
pub type FIndex = [Label; 6];
/// Three labels `(a, b, c)` addressing `R^{ab}_c`.
pub type RIndex = [Label; 3];

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FSymbolTable {
    entries: BTreeMap<[usize; 6], C64>,
}

impl FSymbolTable {
    pub fn admissible(ring: &FusionRing, [a, b, c, d, e, f]: FIndex) -> bool {
        ring.admissible(a, b, e) && ring.admissible(e, c, d) && ring.admissible(b, c, f) && ring.admissible(a, f, d)
    }

    /// Explicitly stored entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = (FIndex, C64)> + '_ {
        self.entries.iter().map(|(k, &v)| (k.map(Label), v))
    }

    fn lookup(&self, idx: FIndex) -> Option<C64> {
        self.entries.get(&idx.map(Label::index)).copied()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RSymbolTable {
    entries: BTreeMap<[usize; 3], C64>,
}

impl RSymbolTable {
    pub fn entries(&self) -> impl Iterator<Item = (RIndex, C64)> + '_ {
        self.entries.iter().map(|(k, &v)| (k.map(Label), v))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnyonModel {
    ring: FusionRing,
    f: FSymbolTable,
    r: RSymbolTable,
    theta: Vec<C64>,
    qdim: Vec<f64>,
    global_dim_sq: f64,
}

impl AnyonModel {
    /// Assembles a model, filling unit-label defaults and deriving the
    /// quantum dimensions from the ring.
    ///
    /// F entries with a unit among `(a, b, c)` and R entries with a unit among
    /// `(a, b)` default to 1 on admissible slots when omitted. Every other
    /// admissible entry must be supplied. Coherence is not checked here.
    pub fn new(
        ring: FusionRing,
        f_entries: impl IntoIterator<Item = (FIndex, C64)>,
        r_entries: impl IntoIterator<Item = (RIndex, C64)>,
        theta: Vec<C64>,
    ) -> Result<Self> {
        let defects = ring.structural_defects();
        if let Some(first) = defects.first() {
            return Err(Error::Schema(first.clone()));
        }
        let report = validate_ring(&ring);
        if let Some(bad) = report.results.iter().find(|r| !r.passed) {
            return Err(Error::Schema(format!(
                "fusion ring fails the {} axiom at {:?}",
                bad.axiom.name(),
                bad.witness.clone().unwrap_or_default()
            )));
        }
        if ring.max_multiplicity() > 1 {
            let r = ring.rank();
            let (a, b, c) = (0..r)
                .flat_map(|a| (0..r).flat_map(move |b| (0..r).map(move |c| (a, b, c))))
                .find(|&(a, b, c)| ring.n(Label(a), Label(b), Label(c)) > 1)
                .expect("max multiplicity > 1");
            return Err(Error::Schema(format!(
                "fusion multiplicity N_({a},{b})^{c} = {} > 1 is not supported",
                ring.n(Label(a), Label(b), Label(c))
            )));
        }
        let rank = ring.rank();
        if theta.len() != rank {
            return Err(Error::Schema(format!("expected {rank} twists, got {}", theta.len())));
        }
        if (theta[0] - one()).norm() > 1e-12 {
            return Err(Error::Schema("twist of the unit label must be 1".into()));
        }

        let mut f = BTreeMap::new();
        for (idx, value) in f_entries {
            if idx.iter().any(|l| l.0 >= rank) {
                return Err(Error::Schema(format!(
                    "F entry {:?} has a label out of range",
                    idx.map(Label::index)
                )));
            }
            if !FSymbolTable::admissible(&ring, idx) {
                return Err(Error::Schema(format!(
                    "F entry {} sits on an inadmissible slot",
                    describe_f(&ring, idx)
                )));
            }
            if f.insert(idx.map(Label::index), value).is_some() {
                return Err(Error::Schema(format!("duplicate F entry {}", describe_f(&ring, idx))));
            }
        }
        for idx in all_f_indices(&ring) {
            let key = idx.map(Label::index);
            if f.contains_key(&key) {
                continue;
            }
            if idx[..3].iter().any(|l| l.is_unit()) {
                f.insert(key, one());
            } else {
                return Err(Error::Schema(format!("missing F entry {}", describe_f(&ring, idx))));
            }
        }

        let mut r = BTreeMap::new();
        for (idx, value) in r_entries {
            let [a, b, c] = idx;
            if idx.iter().any(|l| l.0 >= rank) {
                return Err(Error::Schema(format!(
                    "R entry {:?} has a label out of range",
                    idx.map(Label::index)
                )));
            }
            if !ring.admissible(a, b, c) {
                return Err(Error::Schema(format!(
                    "R entry R^({},{})_{} sits on an inadmissible slot",
                    ring.name(a),
                    ring.name(b),
                    ring.name(c)
                )));
            }
            if r.insert(idx.map(Label::index), value).is_some() {
                return Err(Error::Schema(format!("duplicate R entry {:?}", idx.map(Label::index))));
            }
        }
        for a in ring.labels() {
            for b in ring.labels() {
                for c in ring.channels(a, b) {
                    let key = [a.0, b.0, c.0];
                    if r.contains_key(&key) {
                        continue;
                    }
                    if a.is_unit() || b.is_unit() {
                        r.insert(key, one());
                    } else {
                        return Err(Error::Schema(format!(
                            "missing R entry R^({},{})_{}",
                            ring.name(a),
                            ring.name(b),
                            ring.name(c)
                        )));
                    }
                }
            }
        }

        let qdim = fp_dimensions(&ring)?;
        let global_dim_sq = qdim.iter().map(|d| d * d).sum();
        Ok(Self {
            ring,
            f: FSymbolTable { entries: f },
            r: RSymbolTable { entries: r },
            theta,
            qdim,
            global_dim_sq,
        })
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn f_table(&self) -> &FSymbolTable {
        &self.f
    }

    pub fn r_table(&self) -> &RSymbolTable {
        &self.r
    }

    /// `F^{abc}_d[e, f]`, zero on inadmissible slots.
    pub fn f(&self, a: Label, b: Label, c: Label, d: Label, e: Label, f: Label) -> C64 {
        self.try_f([a, b, c, d, e, f]).unwrap_or_else(|_| zero())
    }

    /// Like [`AnyonModel::f`] but reports a missing admissible entry.
    pub fn try_f(&self, idx: FIndex) -> Result<C64> {
        if !FSymbolTable::admissible(&self.ring, idx) {
            return Ok(zero());
        }
        self.f
            .lookup(idx)
            .ok_or_else(|| Error::Data(format!("missing F entry {}", describe_f(&self.ring, idx))))
    }

    /// `R^{ab}_c`, zero when `c` is not a channel of `a ⊗ b`.
    pub fn r(&self, a: Label, b: Label, c: Label) -> C64 {
        self.try_r([a, b, c]).unwrap_or_else(|_| zero())
    }

    pub fn try_r(&self, [a, b, c]: RIndex) -> Result<C64> {
        if !self.ring.admissible(a, b, c) {
            return Ok(zero());
        }
        self.r.entries.get(&[a.0, b.0, c.0]).copied().ok_or_else(|| {
            Error::Data(format!(
                "missing R entry R^({},{})_{}",
                self.ring.name(a),
                self.ring.name(b),
                self.ring.name(c)
            ))
        })
    }

    pub fn theta(&self, a: Label) -> C64 {
        self.theta[a.0]
    }

    pub fn thetas(&self) -> &[C64] {
        &self.theta
    }

    pub fn qdim(&self, a: Label) -> f64 {
        self.qdim[a.0]
    }

    pub fn qdims(&self) -> &[f64] {
        &self.qdim
    }

    /// `D² = Σ_a d_a²`.
    pub fn global_dim_sq(&self) -> f64 {
        self.global_dim_sq
    }

    /// Copy with one F entry replaced. The slot must be admissible.
    pub fn with_f(&self, idx: FIndex, value: C64) -> Result<Self> {
        if idx.iter().any(|l| l.0 >= self.rank()) || !FSymbolTable::admissible(&self.ring, idx) {
            return Err(Error::Input(format!(
                "F slot {:?} is not admissible",
                idx.map(Label::index)
            )));
        }
        let mut out = self.clone();
        out.f.entries.insert(idx.map(Label::index), value);
        Ok(out)
    }

    /// Copy with every entry of the matrix `F^{abc}_d` multiplied by `factor`.
    pub fn with_f_matrix_scaled(&self, a: Label, b: Label, c: Label, d: Label, factor: C64) -> Result<Self> {
        let mut out = self.clone();
        for e in self.ring.labels() {
            for f in self.ring.labels() {
                let idx = [a, b, c, d, e, f];
                if FSymbolTable::admissible(&self.ring, idx) {
                    let v = self.try_f(idx)?;
                    out.f.entries.insert(idx.map(Label::index), v * factor);
                }
            }
        }
        Ok(out)
    }

    pub fn with_r(&self, idx: RIndex, value: C64) -> Result<Self> {
        let [a, b, c] = idx;
        if idx.iter().any(|l| l.0 >= self.rank()) || !self.ring.admissible(a, b, c) {
            return Err(Error::Input(format!(
                "R slot {:?} is not admissible",
                idx.map(Label::index)
            )));
        }
        let mut out = self.clone();
        out.r.entries.insert(idx.map(Label::index), value);
        Ok(out)
    }

    pub fn with_theta(&self, a: Label, value: C64) -> Result<Self> {
        self.ring.check_label(a)?;
        let mut out = self.clone();
        out.theta[a.0] = value;
        Ok(out)
    }

    /// The same model with labels renamed by `perm` (`new = perm[old]`).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.rank())?;
        let p = |l: Label| Label(perm[l.0]);
        let ring = self.ring.permuted(perm)?;
        let f: Vec<_> = self.f.entries().map(|(idx, v)| (idx.map(p), v)).collect();
        let r: Vec<_> = self.r.entries().map(|(idx, v)| (idx.map(p), v)).collect();
        let mut theta = vec![zero(); self.rank()];
        for a in self.ring.labels() {
            theta[perm[a.0]] = self.theta[a.0];
        }
        Self::new(ring, f, r, theta)
    }
}

fn all_f_indices(ring: &FusionRing) -> Vec<FIndex> {
    let mut out = Vec::new();
    for a in ring.labels() {
        for b in ring.labels() {
            for c in ring.labels() {
                for d in ring.labels() {
                    for e in ring.labels() {
                        for f in ring.labels() {
                            let idx = [a, b, c, d, e, f];
                            if FSymbolTable::admissible(ring, idx) {
                                out.push(idx);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn describe_f(ring: &FusionRing, [a, b, c, d, e, f]: FIndex) -> String {
    let n = |l: Label| ring.name(l);
    format!("F^({},{},{})_{}[{},{}]", n(a), n(b), n(c), n(d), n(e), n(f))
}

/// Outcome of a residual-based check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub check: &'static str,
    pub max_residual: f64,
    /// Index tuple where the largest residual occurred.
    pub worst: Option<Vec<usize>>,
    pub tolerance: f64,
    pub passed: bool,
    /// Residuals of the individual conditions making up the check.
    pub parts: BTreeMap<&'static str, f64>,
}

impl ResidualReport {
    fn new(check: &'static str, tolerance: f64) -> Self {
        Self {
            check,
            max_residual: 0.0,
            worst: None,
            tolerance,
            passed: true,
            parts: BTreeMap::new(),
        }
    }

    fn record(&mut self, residual: f64, at: impl FnOnce() -> Vec<usize>) {
        if residual > self.max_residual || residual.is_nan() {
            self.max_residual = residual;
            self.worst = Some(at());
        }
    }

    fn record_part(&mut self, part: &'static str, residual: f64) {
        let slot = self.parts.entry(part).or_insert(0.0);
        if residual > *slot || residual.is_nan() {
            *slot = residual;
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.max_residual <= self.tolerance;
        self
    }
}

/// Pentagon equation in multiplicity-free skeletal form:
///
/// `F^{fcd}_e[g,l] F^{abl}_e[f,k] = Σ_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]`.
///
/// The worst tuple is reported as `(a, b, c, d, e, f, g, k, l)`.
pub fn check_pentagon(model: &AnyonModel, tolerance: f64) -> Result<ResidualReport> {
    let ring = model.ring();
    let mut report = ResidualReport::new("pentagon", tolerance);
    let labels: Vec<Label> = ring.labels().collect();
    for &a in &labels {
        for &b in &labels {
            for &c in &labels {
                for &d in &labels {
                    for &e in &labels {
                        for f in ring.channels(a, b) {
                            for g in ring.channels(f, c) {
                                if !ring.admissible(g, d, e) {
                                    continue;
                                }
                                for l in ring.channels(c, d) {
                                    for k in ring.channels(b, l) {
                                        if !ring.admissible(a, k, e) {
                                            continue;
                                        }
                                        let lhs = model.try_f([f, c, d, e, g, l])? * model.try_f([a, b, l, e, f, k])?;
                                        let mut rhs = zero();
                                        for &h in &labels {
                                            rhs += model.try_f([a, b, c, g, f, h])?
                                                * model.try_f([a, h, d, e, g, k])?
                                                * model.try_f([b, c, d, k, h, l])?;
                                        }
                                        report.record((lhs - rhs).norm(), || {
                                            [a, b, c, d, e, f, g, k, l].map(Label::index).to_vec()
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report.finish())
}

/// Every F entry with a unit among `(a, b, c)` must be 1.
pub fn check_triangle(model: &AnyonModel, tolerance: f64) -> ResidualReport {
    let mut report = ResidualReport::new("triangle", tolerance);
    for (idx, value) in model.f_table().entries() {
        if idx[..3].iter().any(|l| l.is_unit()) {
            report.record((value - one()).norm(), || idx.map(Label::index).to_vec());
        }
    }
    report.finish()
}

/// Both hexagon equations in multiplicity-free skeletal form:
///
/// `R^{ca}_e F^{acb}_d[e,g] R^{cb}_g = Σ_f F^{cab}_d[e,f] R^{cf}_d F^{abc}_d[f,g]`
///
/// (`forward`) and the same with every R replaced by its inverse
/// (`inverse`). Both are reported in `parts`; the check passes only if both
/// orientations pass. Worst tuple is `(a, b, c, d, e, g)`.
pub fn check_hexagon(model: &AnyonModel, tolerance: f64) -> Result<ResidualReport> {
    let ring = model.ring();
    let mut report = ResidualReport::new("hexagon", tolerance);
    let labels: Vec<Label> = ring.labels().collect();
    let inv = |z: C64| if z == zero() { zero() } else { z.inv() };
    for (part, inverse) in [("forward", false), ("inverse", true)] {
        report.record_part(part, 0.0);
        let r = |a: Label, b: Label, c: Label| -> Result<C64> {
            let z = model.try_r([a, b, c])?;
            Ok(if inverse { inv(z) } else { z })
        };
        for &a in &labels {
            for &b in &labels {
                for &c in &labels {
                    for &d in &labels {
                        for &e in &labels {
                            for &g in &labels {
                                let lhs = r(c, a, e)? * model.try_f([a, c, b, d, e, g])? * r(c, b, g)?;
                                let mut rhs = zero();
                                for &f in &labels {
                                    rhs += model.try_f([c, a, b, d, e, f])?
                                        * r(c, f, d)?
                                        * model.try_f([a, b, c, d, f, g])?;
                                }
                                let residual = (lhs - rhs).norm();
                                report.record_part(part, residual);
                                report.record(residual, || [a, b, c, d, e, g].map(Label::index).to_vec());
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report.finish())
}

impl ResidualReport {
    /// For hexagon reports: which orientations hold within tolerance.
    pub fn passing_parts(&self) -> Vec<&'static str> {
        self.parts
            .iter()
            .filter(|(_, &v)| v <= self.tolerance)
            .map(|(&k, _)| k)
            .collect()
    }
}

/// Balancing `R^{ba}_c R^{ab}_c = θ_c / (θ_a θ_b)` on every admissible triple,
/// and `θ_{a*} = θ_a`.
pub fn check_ribbon(model: &AnyonModel, tolerance: f64) -> ResidualReport {
    let ring = model.ring();
    let mut report = ResidualReport::new("ribbon", tolerance);
    report.record_part("balancing", 0.0);
    report.record_part("dual_twist", 0.0);
    for a in ring.labels() {
        for b in ring.labels() {
            for c in ring.channels(a, b) {
                let lhs = model.r(b, a, c) * model.r(a, b, c);
                let rhs = model.theta(c) / (model.theta(a) * model.theta(b));
                let residual = (lhs - rhs).norm();
                report.record_part("balancing", residual);
                report.record(residual, || vec![a.0, b.0, c.0]);
            }
        }
        let residual = (model.theta(ring.dual(a)) - model.theta(a)).norm();
        report.record_part("dual_twist", residual);
        report.record(residual, || vec![a.0]);
    }
    report.finish()
}

/// Every F-matrix unitary, every R and θ of unit modulus.
pub fn check_unitarity(model: &AnyonModel, tolerance: f64) -> ResidualReport {
    let ring = model.ring();
    let mut report = ResidualReport::new("unitarity", tolerance);
    for part in ["f", "r", "theta"] {
        report.record_part(part, 0.0);
    }
    for a in ring.labels() {
        for b in ring.labels() {
            for c in ring.labels() {
                for d in ring.labels() {
                    let m = crate::fusion_space::f_matrix(model, a, b, c, d);
                    if m.rows() == 0 {
                        continue;
                    }
                    let residual = if m.is_square() {
                        m.unitarity_residual()
                    } else {
                        f64::INFINITY
                    };
                    report.record_part("f", residual);
                    report.record(residual, || vec![a.0, b.0, c.0, d.0]);
                }
            }
        }
    }
    for (idx, value) in model.r_table().entries() {
        let residual = (value.norm() - 1.0).abs();
        report.record_part("r", residual);
        report.record(residual, || idx.map(Label::index).to_vec());
    }
    for a in ring.labels() {
        let residual = (model.theta(a).norm() - 1.0).abs();
        report.record_part("theta", residual);
        report.record(residual, || vec![a.0]);
    }
    report.finish()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SMatrix {
    /// Normalized `s = s̃ / D`.
    pub s: ComplexMatrix,
    /// Unnormalized `s̃_{ij} = (θ_i θ_j)^{-1} Σ_k N_{i j*}^k d_k θ_k`.
    pub unnormalized: ComplexMatrix,
    /// `D = sqrt(Σ d_a²)`.
    pub total_dimension: f64,
}

pub fn s_matrix(model: &AnyonModel) -> SMatrix {
    let ring = model.ring();
    let r = ring.rank();
    let mut st = ComplexMatrix::zeros(r, r);
    for i in ring.labels() {
        for j in ring.labels() {
            let jd = ring.dual(j);
            let sum: C64 = ring
                .labels()
                .map(|k| model.theta(k) * (ring.n(i, jd, k) as f64 * model.qdim(k)))
                .sum();
            st[(i.0, j.0)] = sum / (model.theta(i) * model.theta(j));
        }
    }
    let total_dimension = model.global_dim_sq().sqrt();
    SMatrix {
        s: st.scale(C64::new(1.0 / total_dimension, 0.0)),
        unnormalized: st,
        total_dimension,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModularityReport {
    pub symmetric: bool,
    pub symmetry_residual: f64,
    pub invertible: bool,
    pub abs_det: f64,
    pub tolerance: f64,
}

impl ModularityReport {
    pub fn passed(&self) -> bool {
        self.symmetric && self.invertible
    }
}

/// Symmetry and invertibility of the normalized S-matrix. Invertible means
/// `|det S| > tolerance`.
pub fn check_modularity(model: &AnyonModel, tolerance: f64) -> ModularityReport {
    let s = s_matrix(model).s;
    let symmetry_residual = s.max_abs_diff(&s.transpose());
    let abs_det = s.det().map(|d| d.norm()).unwrap_or(0.0);
    ModularityReport {
        symmetric: symmetry_residual <= tolerance,
        symmetry_residual,
        invertible: abs_det > tolerance,
        abs_det,
        tolerance,
    }
}

/// `Σ_t d_t tr(block_t)` over blocks keyed by total charge.
pub fn quantum_trace(model: &AnyonModel, blocks: &BTreeMap<Label, ComplexMatrix>) -> Result<C64> {
    let mut total = zero();
    for (&t, block) in blocks {
        model.ring().check_label(t)?;
        if !block.is_square() {
            return Err(Error::Input(format!(
                "block for sector {} is {}x{}, not square",
                model.ring().name(t),
                block.rows(),
                block.cols()
            )));
        }
        total += block.trace() * model.qdim(t);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, fibonacci};
    use std::f64::consts::PI;

    const I: Label = Label(0);
    const T: Label = Label(1);

    fn phi() -> f64 {
        (1.0 + 5f64.sqrt()) / 2.0
    }

    fn cis(x: f64) -> C64 {
        C64::from_polar(1.0, x)
    }

    fn z2_model(theta: C64, r: C64, f: f64) -> AnyonModel {
        let ring = FusionRing::from_quadruples(
            vec!["1".into(), "psi".into()],
            vec![0, 1],
            &[[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]],
        )
        .unwrap();
        AnyonModel::new(
            ring,
            [([T, T, T, T, I, I], C64::new(f, 0.0))],
            [([T, T, I], r)],
            vec![one(), theta],
        )
        .unwrap()
    }

    #[test]
    fn fibonacci_passes_every_check() {
        let m = fibonacci();
        let tol = DEFAULT_TOLERANCE;
        let pent = check_pentagon(&m, tol).unwrap();
        assert!(pent.passed && pent.max_residual < 1e-12, "{pent:?}");
        assert!(check_triangle(&m, tol).passed);
        let hex = check_hexagon(&m, tol).unwrap();
        assert!(hex.passed && hex.max_residual < 1e-12, "{hex:?}");
        assert_eq!(hex.passing_parts(), vec!["forward", "inverse"]);
        assert!(check_ribbon(&m, tol).passed);
        assert!(check_unitarity(&m, tol).passed);
        assert!(check_modularity(&m, tol).passed());
    }

    #[test]
    fn trivial_model_checks() {
        let m = builtin("trivial").unwrap();
        assert_eq!(check_pentagon(&m, 1e-9).unwrap().max_residual, 0.0);
        assert!(check_triangle(&m, 1e-9).passed);
        assert!(check_hexagon(&m, 1e-9).unwrap().passed);
        assert!(check_ribbon(&m, 1e-9).passed);
        assert!(check_unitarity(&m, 1e-9).passed);
        let s = s_matrix(&m);
        assert_eq!(s.s, ComplexMatrix::identity(1));
        let report = check_modularity(&m, 1e-9);
        assert!(report.invertible && (report.abs_det - 1.0).abs() < 1e-15);
    }

    #[test]
    fn flipped_f_sign_fails_pentagon() {
        let m = fibonacci()
            .with_f([T, T, T, T, T, T], C64::new(1.0 / phi(), 0.0))
            .unwrap();
        let report = check_pentagon(&m, 1e-9).unwrap();
        assert!(!report.passed);
        assert!(report.max_residual > 0.1);
    }

    #[test]
    fn injected_unit_f_fails_triangle() {
        let m = fibonacci().with_f([I, T, T, I, T, I], C64::new(-1.0, 0.0)).unwrap();
        let report = check_triangle(&m, 1e-9);
        assert!(!report.passed);
        assert_eq!(report.worst, Some(vec![0, 1, 1, 0, 1, 0]));
        assert!((report.max_residual - 2.0).abs() < 1e-15);
    }

    #[test]
    fn conjugated_r_fails_hexagon() {
        let m = fibonacci().with_r([T, T, T], cis(-3.0 * PI / 5.0)).unwrap();
        let report = check_hexagon(&m, 1e-9).unwrap();
        assert!(!report.passed);
        assert!(report.max_residual > 0.1);
    }

    #[test]
    fn ribbon_arithmetic() {
        // (e^{-4πi/5})² = e^{-8πi/5} = θ_1 / θ_τ².
        let r = cis(-4.0 * PI / 5.0);
        let theta = cis(4.0 * PI / 5.0);
        assert!((r * r - one() / (theta * theta)).norm() < 1e-15);
        let bad = fibonacci().with_theta(T, one()).unwrap();
        let report = check_ribbon(&bad, 1e-9);
        assert!(!report.passed);
        assert_eq!(report.worst, Some(vec![1, 1, 1]));
    }

    #[test]
    fn s_matrix_examples() {
        let s = s_matrix(&fibonacci());
        let n = 1.0 / (2.0 + phi()).sqrt();
        let expect = ComplexMatrix::from_rows(vec![
            vec![C64::new(n, 0.0), C64::new(n * phi(), 0.0)],
            vec![C64::new(n * phi(), 0.0), C64::new(-n, 0.0)],
        ])
        .unwrap();
        assert!(s.s.max_abs_diff(&expect) < 1e-12);

        let fermion = z2_model(C64::new(-1.0, 0.0), C64::new(-1.0, 0.0), 1.0);
        let s = s_matrix(&fermion).s;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expect = ComplexMatrix::from_rows(vec![vec![C64::new(h, 0.0); 2]; 2]).unwrap();
        assert!(s.max_abs_diff(&expect) < 1e-15);
        let report = check_modularity(&fermion, 1e-9);
        assert!(report.symmetric && !report.invertible && report.abs_det < 1e-12);
    }

    #[test]
    fn semion_is_modular_and_coherent() {
        let semion = z2_model(C64::new(0.0, 1.0), C64::new(0.0, 1.0), -1.0);
        assert!(check_pentagon(&semion, 1e-9).unwrap().passed);
        assert!(check_hexagon(&semion, 1e-9).unwrap().passed);
        assert!(check_ribbon(&semion, 1e-9).passed);
        assert!(check_modularity(&semion, 1e-9).passed());
    }

    #[test]
    fn unitarity_examples() {
        let f = crate::fusion_space::f_matrix(&fibonacci(), T, T, T, T);
        assert!(f.unitarity_residual() < 1e-15);
        let scaled = fibonacci()
            .with_f_matrix_scaled(T, T, T, T, C64::new(2.0, 0.0))
            .unwrap();
        let report = check_unitarity(&scaled, 1e-9);
        assert!(!report.passed);
        assert!((report.max_residual - 3.0).abs() < 1e-12);
        assert_eq!(report.worst, Some(vec![1, 1, 1, 1]));
    }

    #[test]
    fn quantum_trace_examples() {
        let m = fibonacci();
        let id1 = ComplexMatrix::identity(1);
        let both = BTreeMap::from([(I, id1.clone()), (T, id1.clone())]);
        assert!((quantum_trace(&m, &both).unwrap() - C64::new(1.0 + phi(), 0.0)).norm() < 1e-15);
        let unit_only = BTreeMap::from([(I, id1)]);
        assert_eq!(quantum_trace(&m, &unit_only).unwrap(), one());
        let zeros = BTreeMap::from([(I, ComplexMatrix::zeros(1, 1)), (T, ComplexMatrix::zeros(2, 2))]);
        assert_eq!(quantum_trace(&m, &zeros).unwrap(), zero());
        let bad = BTreeMap::from([(T, ComplexMatrix::zeros(1, 2))]);
        assert!(matches!(quantum_trace(&m, &bad), Err(Error::Input(_))));
    }

    #[test]
    fn construction_rejects_bad_data() {
        let ring = fibonacci().ring().clone();
        // missing the non-unit F^{τττ}_τ block
        let err = AnyonModel::new(
            ring.clone(),
            [],
            [([T, T, I], one()), ([T, T, T], one())],
            vec![one(), one()],
        );
        assert!(matches!(err, Err(Error::Schema(msg)) if msg.contains("missing F")));
        let err = AnyonModel::new(FusionRing::trivial(), [], [], vec![C64::new(-1.0, 0.0)]);
        assert!(matches!(err, Err(Error::Schema(_))));
        // multiplicity two
        let ring = FusionRing::from_quadruples(
            vec!["1".into(), "x".into()],
            vec![0, 1],
            &[[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 2]],
        )
        .unwrap();
        let err = AnyonModel::new(ring, [], [], vec![one(), one()]);
        assert!(matches!(err, Err(Error::Schema(msg)) if msg.contains("multiplicity")));
    }
}
