//! Integer fusion algebra on a finite label set.
//!
//! Labels are dense indices `0..rank` and index 0 is always the unit.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of a simple object. `Label::UNIT` is the tensor unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Label(pub usize);

impl Label {
    pub const UNIT: Label = Label(0);

    pub fn index(self) -> usize {
        self.0
    }

    pub fn is_unit(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    names: Vec<String>,
    dual: Vec<Label>,
    /// Flattened `n[a][b][c]`.
    n: Vec<u32>,
}

impl FusionRing {
    /// Builds a ring from a dense structure-constant table `n[a][b][c]`.
    ///
    /// Only the shape is checked here; the algebraic axioms are reported by
    /// [`validate_ring`] and the unit/dual invariants by
    /// [`FusionRing::structural_defects`].
    pub fn new(names: Vec<String>, dual: Vec<usize>, n: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        let rank = names.len();
        if rank == 0 {
            return Err(Error::Input("a fusion ring needs at least the unit label".into()));
        }
        if dual.len() != rank {
            return Err(Error::Input(format!(
                "dual map has {} entries for {rank} labels",
                dual.len()
            )));
        }
        if let Some(&bad) = dual.iter().find(|&&d| d >= rank) {
            return Err(Error::Input(format!("dual label {bad} out of range")));
        }
        if n.len() != rank || n.iter().any(|m| m.len() != rank || m.iter().any(|v| v.len() != rank)) {
            return Err(Error::Input(format!("fusion table must be {rank}x{rank}x{rank}")));
        }
        Ok(Self {
            names,
            dual: dual.into_iter().map(Label).collect(),
            n: n.into_iter().flatten().flatten().collect(),
        })
    }

    /// Builds a ring from sparse `(a, b, c, N)` quadruples; omitted entries are 0.
    pub fn from_quadruples(names: Vec<String>, dual: Vec<usize>, quads: &[[u32; 4]]) -> Result<Self> {
        let rank = names.len();
        let mut n = vec![vec![vec![0u32; rank]; rank]; rank];
        for q in quads {
            let [a, b, c, m] = *q;
            let (a, b, c) = (a as usize, b as usize, c as usize);
            if a >= rank || b >= rank || c >= rank {
                return Err(Error::Input(format!("fusion entry {q:?} has a label out of range")));
            }
            n[a][b][c] = m;
        }
        Self::new(names, dual, n)
    }

    pub fn trivial() -> Self {
        Self::new(vec!["1".into()], vec![0], vec![vec![vec![1]]]).expect("trivial ring is well-formed")
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + Clone {
        (0..self.rank()).map(Label)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Label) -> &str {
        &self.names[a.0]
    }

    pub fn dual(&self, a: Label) -> Label {
        self.dual[a.0]
    }

    /// Resolves a display name. The unit is always reachable as `"1"`.
    pub fn label_by_name(&self, name: &str) -> Result<Label> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Ok(Label(i));
        }
        if name == "1" {
            return Ok(Label::UNIT);
        }
        Err(Error::Input(format!(
            "unknown label {name:?}; known labels: {}",
            self.names.join(", ")
        )))
    }

    pub fn check_label(&self, a: Label) -> Result<()> {
        if a.0 < self.rank() {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "label {} out of range for rank {}",
                a.0,
                self.rank()
            )))
        }
    }

    /// `N_{ab}^c`. Panics on out-of-range labels; use [`fuse`] for checked access.
    pub fn n(&self, a: Label, b: Label, c: Label) -> u32 {
        let r = self.rank();
        self.n[(a.0 * r + b.0) * r + c.0]
    }

    pub fn admissible(&self, a: Label, b: Label, c: Label) -> bool {
        self.n(a, b, c) > 0
    }

    /// Channels `c` with `N_{ab}^c > 0`, ascending.
    pub fn channels(&self, a: Label, b: Label) -> impl Iterator<Item = Label> + '_ {
        self.labels().filter(move |&c| self.admissible(a, b, c))
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.n.iter().copied().max().unwrap_or(0)
    }

    /// Violations of the unit law, dual involution and unique unit channel.
    pub fn structural_defects(&self) -> Vec<String> {
        let mut defects = Vec::new();
        for a in self.labels() {
            for c in self.labels() {
                let expect = u32::from(c == a);
                if self.n(Label::UNIT, a, c) != expect || self.n(a, Label::UNIT, c) != expect {
                    defects.push(format!("unit law fails for {} and {}", self.name(a), self.name(c)));
                }
            }
            if self.dual(self.dual(a)) != a {
                defects.push(format!("dual is not an involution at {}", self.name(a)));
            }
            for b in self.labels() {
                let expect = u32::from(b == self.dual(a));
                if self.n(a, b, Label::UNIT) != expect {
                    defects.push(format!(
                        "N_({},{})^1 = {} contradicts dual({}) = {}",
                        self.name(a),
                        self.name(b),
                        self.n(a, b, Label::UNIT),
                        self.name(a),
                        self.name(self.dual(a))
                    ));
                }
            }
        }
        defects
    }

    /// Returns a copy with one structure constant replaced.
    pub fn with_n(&self, a: Label, b: Label, c: Label, value: u32) -> Result<Self> {
        for l in [a, b, c] {
            self.check_label(l)?;
        }
        let mut out = self.clone();
        let r = self.rank();
        out.n[(a.0 * r + b.0) * r + c.0] = value;
        Ok(out)
    }

    /// Returns the ring with labels renamed by `perm` (`new = perm[old]`).
    /// The permutation must fix the unit.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.rank())?;
        let r = self.rank();
        let mut names = vec![String::new(); r];
        let mut dual = vec![0; r];
        let mut n = vec![vec![vec![0u32; r]; r]; r];
        for a in self.labels() {
            names[perm[a.0]] = self.names[a.0].clone();
            dual[perm[a.0]] = perm[self.dual(a).0];
            for b in self.labels() {
                for c in self.labels() {
                    n[perm[a.0]][perm[b.0]][perm[c.0]] = self.n(a, b, c);
                }
            }
        }
        Self::new(names, dual, n)
    }
}

pub(crate) fn check_permutation(perm: &[usize], rank: usize) -> Result<()> {
    let mut seen = vec![false; rank];
    if perm.len() != rank {
        return Err(Error::Input("permutation length does not match rank".into()));
    }
    for &p in perm {
        if p >= rank || seen[p] {
            return Err(Error::Input("not a permutation".into()));
        }
        seen[p] = true;
    }
    if perm[0] != 0 {
        return Err(Error::Input("relabeling must fix the unit".into()));
    }
    Ok(())
}

/// `{c ↦ N_{ab}^c}` restricted to nonzero multiplicities.
pub fn fuse(ring: &FusionRing, a: Label, b: Label) -> Result<BTreeMap<Label, u32>> {
    ring.check_label(a)?;
    ring.check_label(b)?;
    Ok(ring
        .labels()
        .filter_map(|c| {
            let m = ring.n(a, b, c);
            (m > 0).then_some((c, m))
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    Commutativity,
    Associativity,
    Positivity,
    Conjugation,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::Positivity => "positivity",
            Axiom::Conjugation => "conjugation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub passed: bool,
    /// First failing index tuple, in the axiom's own index order.
    pub witness: Option<Vec<usize>>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub results: Vec<AxiomResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn get(&self, axiom: Axiom) -> &AxiomResult {
        self.results
            .iter()
            .find(|r| r.axiom == axiom)
            .expect("every axiom is reported")
    }
}

/// Checks the four fusion-ring axioms. Failures are report entries.
pub fn validate_ring(ring: &FusionRing) -> ValidationReport {
    let r = ring.rank();
    let idx = |i: usize| Label(i);

    let commutativity = (|| {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    if ring.n(idx(j), idx(k), idx(l)) != ring.n(idx(k), idx(j), idx(l)) {
                        return Some(vec![j, k, l]);
                    }
                }
            }
        }
        None
    })();

    let associativity = (|| {
        for j in 0..r {
            for k in 0..r {
                for l in 0..r {
                    for n in 0..r {
                        let lhs: u64 = (0..r)
                            .map(|m| ring.n(idx(j), idx(k), idx(m)) as u64 * ring.n(idx(m), idx(l), idx(n)) as u64)
                            .sum();
                        let rhs: u64 = (0..r)
                            .map(|m| ring.n(idx(k), idx(l), idx(m)) as u64 * ring.n(idx(j), idx(m), idx(n)) as u64)
                            .sum();
                        if lhs != rhs {
                            return Some(vec![j, k, l, n]);
                        }
                    }
                }
            }
        }
        None
    })();

    // Structure constants are stored unsigned, so positivity can only fail
    // if the table was built from negative data, which the constructors reject.
    let positivity: Option<Vec<usize>> = None;

    let (conjugation, conj_note) = check_conjugation(ring);

    let entry = |axiom, witness: Option<Vec<usize>>, note: Option<String>| AxiomResult {
        axiom,
        passed: witness.is_none(),
        witness,
        note,
    };
    ValidationReport {
        results: vec![
            entry(Axiom::Commutativity, commutativity, None),
            entry(Axiom::Associativity, associativity, None),
            entry(Axiom::Positivity, positivity, None),
            entry(Axiom::Conjugation, conjugation, conj_note),
        ],
    }
}

/// Conjugation with `i_0` fixed to the unit: `c_{jk} = N_{jk}^0` must square
/// to the identity and the induced involution must be an automorphism.
fn check_conjugation(ring: &FusionRing) -> (Option<Vec<usize>>, Option<String>) {
    let r = ring.rank();
    let c = |j: usize, k: usize| ring.n(Label(j), Label(k), Label::UNIT) as u64;
    for j in 0..r {
        for l in 0..r {
            let sq: u64 = (0..r).map(|k| c(j, k) * c(k, l)).sum();
            if sq != u64::from(j == l) {
                return (
                    Some(vec![j, l]),
                    Some(format!(
                        "C^2 != 1 at ({j},{l}) with i_0 fixed to the unit; other choices of i_0 are not searched"
                    )),
                );
            }
        }
    }
    // C is a permutation matrix of order 2, so each row has exactly one 1.
    let star: Vec<usize> = (0..r)
        .map(|j| (0..r).find(|&k| c(j, k) == 1).expect("C^2 = 1 forces a unit entry"))
        .collect();
    for (j, &s) in star.iter().enumerate() {
        if s != ring.dual(Label(j)).0 {
            return (
                Some(vec![j]),
                Some(format!(
                    "conjugation matrix maps {j} to {s} but the dual map gives {}",
                    ring.dual(Label(j)).0
                )),
            );
        }
    }
    for j in 0..r {
        for k in 0..r {
            for l in 0..r {
                if ring.n(Label(star[j]), Label(star[k]), Label(star[l])) != ring.n(Label(j), Label(k), Label(l)) {
                    return (Some(vec![j, k, l]), Some("conjugation is not an automorphism".into()));
                }
            }
        }
    }
    (None, None)
}

/// Coefficients of `a^{⊗k}` in the label basis, by iterated fusion.
pub fn power_decompose(ring: &FusionRing, a: Label, k: usize) -> Result<Vec<u64>> {
    ring.check_label(a)?;
    if k == 0 {
        return Err(Error::Input(
            "power must be at least 1; the empty product is the unit label".into(),
        ));
    }
    let mut coeffs = vec![0u64; ring.rank()];
    coeffs[a.0] = 1;
    for _ in 1..k {
        coeffs = multiply_by(ring, &coeffs, a)?;
    }
    Ok(coeffs)
}

/// Right-multiplies a coefficient vector by label `a`.
pub fn multiply_by(ring: &FusionRing, coeffs: &[u64], a: Label) -> Result<Vec<u64>> {
    let mut next = vec![0u64; ring.rank()];
    for (b, &m) in coeffs.iter().enumerate() {
        if m == 0 {
            continue;
        }
        for c in ring.labels() {
            let term = m
                .checked_mul(ring.n(Label(b), a, c) as u64)
                .and_then(|t| t.checked_add(next[c.0]))
                .ok_or_else(|| Error::Numeric("fusion coefficient overflow".into()))?;
            next[c.0] = term;
        }
    }
    Ok(next)
}

const FP_MAX_ITERATIONS: usize = 10_000;
const FP_TOLERANCE: f64 = 1e-12;

/// Frobenius-Perron dimension of every label: the largest real eigenvalue of
/// the fusion matrix `(N_a)_{bc} = N_{ab}^c`.
///
/// Power iteration runs on `1 + N_a`, whose dominant eigenvalue `1 + λ_FP`
/// is strictly larger in modulus than every other eigenvalue even when `N_a`
/// is periodic (e.g. a permutation matrix).
pub fn fp_dimensions(ring: &FusionRing) -> Result<Vec<f64>> {
    let r = ring.rank();
    let mut dims = Vec::with_capacity(r);
    for a in ring.labels() {
        if a.is_unit() {
            dims.push(1.0);
            continue;
        }
        let apply = |v: &[f64]| -> Vec<f64> {
            (0..r)
                .map(|b| v[b] + (0..r).map(|c| ring.n(a, Label(b), Label(c)) as f64 * v[c]).sum::<f64>())
                .collect()
        };
        let mut v = vec![1.0 / (r as f64).sqrt(); r];
        let mut lambda = f64::NAN;
        let mut converged = false;
        for _ in 0..FP_MAX_ITERATIONS {
            let w = apply(&v);
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err(Error::Numeric(format!(
                    "fusion matrix of {} is nilpotent",
                    ring.name(a)
                )));
            }
            let next: Vec<f64> = w.iter().map(|x| x / norm).collect();
            let step = next.iter().zip(&v).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            let previous = lambda;
            lambda = norm;
            v = next;
            if step < FP_TOLERANCE && (lambda - previous).abs() < FP_TOLERANCE * lambda.max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numeric(format!(
                "power iteration for {} did not converge in {FP_MAX_ITERATIONS} iterations",
                ring.name(a)
            )));
        }
        dims.push(lambda - 1.0);
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fibonacci() -> FusionRing {
        FusionRing::from_quadruples(
            vec!["1".into(), "tau".into()],
            vec![0, 1],
            &[[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 1]],
        )
        .unwrap()
    }

    fn z2() -> FusionRing {
        FusionRing::from_quadruples(
            vec!["1".into(), "psi".into()],
            vec![0, 1],
            &[[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]],
        )
        .unwrap()
    }

    const TAU: Label = Label(1);

    #[test]
    fn fuse_examples() {
        let fib = fibonacci();
        let tt = fuse(&fib, TAU, TAU).unwrap();
        assert_eq!(tt, BTreeMap::from([(Label(0), 1), (TAU, 1)]));
        assert_eq!(fuse(&fib, Label(0), TAU).unwrap(), BTreeMap::from([(TAU, 1)]));
        let triv = FusionRing::trivial();
        assert_eq!(
            fuse(&triv, Label(0), Label(0)).unwrap(),
            BTreeMap::from([(Label(0), 1)])
        );
        assert!(matches!(fuse(&fib, Label(2), TAU), Err(Error::Input(_))));
    }

    #[test]
    fn validate_good_rings() {
        assert!(validate_ring(&fibonacci()).passed());
        assert!(validate_ring(&FusionRing::trivial()).passed());
        assert!(validate_ring(&z2()).passed());
    }

    #[test]
    fn missing_unit_channel_breaks_conjugation() {
        let mutant = fibonacci().with_n(TAU, TAU, Label(0), 0).unwrap();
        let report = validate_ring(&mutant);
        let conj = report.get(Axiom::Conjugation);
        assert!(!conj.passed);
        // C = diag(1, 0), so (C^2)_{11} = 0 != 1.
        assert_eq!(conj.witness, Some(vec![1, 1]));
        assert!(conj.note.as_deref().unwrap().contains("i_0"));
        assert!(report.get(Axiom::Commutativity).passed);
    }

    #[test]
    fn non_commutative_table_reports_witness() {
        let mutant = fibonacci().with_n(Label(1), Label(0), Label(0), 1).unwrap();
        let report = validate_ring(&mutant);
        assert_eq!(report.get(Axiom::Commutativity).witness, Some(vec![0, 1, 0]));
    }

    #[test]
    fn power_examples() {
        let fib = fibonacci();
        assert_eq!(power_decompose(&fib, TAU, 5).unwrap(), vec![3, 5]);
        assert_eq!(power_decompose(&fib, TAU, 1).unwrap(), vec![0, 1]);
        assert_eq!(power_decompose(&fib, Label(0), 7).unwrap(), vec![1, 0]);
        assert!(matches!(power_decompose(&fib, TAU, 0), Err(Error::Input(_))));
    }

    #[test]
    fn fp_dimension_examples() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let d = fp_dimensions(&fibonacci()).unwrap();
        assert_eq!(d[0], 1.0);
        assert!((d[1] - phi).abs() < 1e-12);
        assert_eq!(fp_dimensions(&FusionRing::trivial()).unwrap(), vec![1.0]);
        // N_psi = [[0,1],[1,0]] is periodic; its largest eigenvalue is 1.
        let d = fp_dimensions(&z2()).unwrap();
        assert!((d[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn structural_defects_catch_bad_dual() {
        let ring = FusionRing::from_quadruples(
            vec!["1".into(), "tau".into()],
            vec![0, 0],
            &[[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 1]],
        )
        .unwrap();
        let defects = ring.structural_defects();
        assert!(!defects.is_empty());
        assert!(fibonacci().structural_defects().is_empty());
    }

    #[test]
    fn label_lookup_accepts_unit_alias() {
        let ring = FusionRing::from_quadruples(vec!["I".into()], vec![0], &[[0, 0, 0, 1]]).unwrap();
        assert_eq!(ring.label_by_name("1").unwrap(), Label::UNIT);
        assert_eq!(ring.label_by_name("I").unwrap(), Label::UNIT);
        assert!(ring.label_by_name("i").is_err());
    }
}
