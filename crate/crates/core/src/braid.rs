//! Braid words, their representations on fusion spaces, braid-closure
//! invariants and brute-force compilation of unitaries into braid words.
//!
//! Letters are signed integers: `g > 0` is `σ_g` and `g < 0` is `σ_{|g|}^{-1}`.
//! Words are read in time order, so the first letter is applied first and the
//! matrix of `g_1 g_2 … g_m` is `ρ(g_m) ⋯ ρ(g_1)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion_ring::Label;
use crate::fusion_space::{braid_generator, braid_generator_inverse, enumerate_basis, FusionBasis};
use crate::linalg::{phase_distance, ComplexMatrix, C64};
use crate::model::AnyonModel;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Input("a braid needs at least one strand".into()));
        }
        for (pos, &g) in letters.iter().enumerate() {
            check_letter(g, strands).map_err(|reason| Error::Parse {
                position: pos + 1,
                token: g.to_string(),
                reason,
            })?;
        }
        Ok(Self { strands, letters })
    }

    pub fn empty(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&g| i64::from(g.signum())).sum()
    }

    /// Every crossing flipped.
    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().map(|g| -g).collect(),
        }
    }

    /// The inverse braid: reversed, with every letter inverted.
    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|g| -g).collect(),
        }
    }

    /// `self` followed by `other`. Strand counts must agree.
    pub fn then(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::Input(
                "cannot concatenate braids on different strand counts".into(),
            ));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }

    /// Markov stabilization: one more strand and a final `±σ_n`.
    pub fn stabilized(&self, positive: bool) -> Self {
        let n = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        Self {
            strands: self.strands + 1,
            letters,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self.letters.iter().map(i32::to_string).collect();
        f.write_str(&tokens.join(" "))
    }
}

fn check_letter(g: i32, strands: usize) -> std::result::Result<(), String> {
    if g == 0 {
        return Err("braid letters must be nonzero".into());
    }
    if g.unsigned_abs() as usize >= strands {
        return Err(format!(
            "only generators 1..={} exist on {strands} strands",
            strands.saturating_sub(1)
        ));
    }
    Ok(())
}

/// Parses whitespace-separated signed integers into a word on `strands` strands.
pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord> {
    if strands == 0 {
        return Err(Error::Input("a braid needs at least one strand".into()));
    }
    let mut letters = Vec::new();
    for (pos, token) in text.split_whitespace().enumerate() {
        let parse_err = |reason: String| Error::Parse {
            position: pos + 1,
            token: token.to_string(),
            reason,
        };
        let g: i32 = token.parse().map_err(|_| parse_err("not a signed integer".into()))?;
        check_letter(g, strands).map_err(parse_err)?;
        letters.push(g);
    }
    Ok(BraidWord { strands, letters })
}

/// Generator matrices for one single-charge sector `charge^{⊗n} → total`.
#[derive(Clone, Debug)]
pub struct BraidRepresentation {
    basis: FusionBasis,
    /// Index `k` holds letter `k - (n - 1)`, skipping 0.
    generators: Vec<ComplexMatrix>,
}

impl BraidRepresentation {
    pub fn new(model: &AnyonModel, charge: Label, strands: usize, total: Label) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Input("a braid needs at least one strand".into()));
        }
        let basis = enumerate_basis(model, &vec![charge; strands], total)?;
        if basis.is_empty() {
            return Err(Error::Input(format!(
                "no fusion channel from {strands} copies of {} to {}",
                model.ring().name(charge),
                model.ring().name(total)
            )));
        }
        let mut generators = Vec::with_capacity(2 * (strands - 1));
        for g in letters_for(strands) {
            let i = g.unsigned_abs() as usize;
            let gen = if g > 0 {
                braid_generator(model, &basis, i)?
            } else {
                braid_generator_inverse(model, &basis, i)?
            };
            generators.push(gen.matrix);
        }
        Ok(Self { basis, generators })
    }

    pub fn basis(&self) -> &FusionBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn strands(&self) -> usize {
        self.basis.charges().len()
    }

    pub fn generator(&self, letter: i32) -> &ComplexMatrix {
        let n = self.strands() as i32;
        let k = if letter < 0 { letter + n - 1 } else { letter + n - 2 };
        &self.generators[k as usize]
    }

    pub fn evaluate(&self, word: &BraidWord) -> Result<ComplexMatrix> {
        if word.strands() != self.strands() {
            return Err(Error::Input(format!(
                "word on {} strands evaluated in a {}-strand representation",
                word.strands(),
                self.strands()
            )));
        }
        let mut u = ComplexMatrix::identity(self.dim());
        for &g in word.letters() {
            u = self.generator(g) * &u;
        }
        Ok(u)
    }
}

/// All letters on `strands` strands in ascending integer order.
pub fn letters_for(strands: usize) -> Vec<i32> {
    let n = strands as i32;
    (-(n - 1)..0).chain(1..n).collect()
}

/// The unitary of `word` on `charge^{⊗n} → total`.
pub fn evaluate(model: &AnyonModel, word: &BraidWord, charge: Label, total: Label) -> Result<ComplexMatrix> {
    BraidRepresentation::new(model, charge, word.strands(), total)?.evaluate(word)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnotInvariantResult {
    /// `Σ_t d_t tr ρ_t(word)`.
    pub raw: C64,
    /// Unknot-normalized, framing-corrected value.
    pub normalized: C64,
    pub strands: usize,
    pub writhe: i64,
    pub kappa_plus: C64,
    pub kappa_minus: C64,
}

/// Quantum trace of the braid over every total-charge sector.
pub fn braid_trace(model: &AnyonModel, word: &BraidWord, charge: Label) -> Result<C64> {
    model.ring().check_label(charge)?;
    let mut blocks = BTreeMap::new();
    for t in model.ring().labels() {
        let basis = enumerate_basis(model, &vec![charge; word.strands()], t)?;
        if basis.is_empty() {
            continue;
        }
        blocks.insert(t, evaluate(model, word, charge, t)?);
    }
    crate::model::quantum_trace(model, &blocks)
}

/// Framing constants `κ_± = Ṽ(σ_1^{±1} on 2 strands) / Ṽ(unknot on 1 strand)`.
pub fn markov_constants(model: &AnyonModel, charge: Label) -> Result<(C64, C64)> {
    let unknot = braid_trace(model, &BraidWord::empty(1)?, charge)?;
    let plus = braid_trace(model, &BraidWord::new(2, vec![1])?, charge)?;
    let minus = braid_trace(model, &BraidWord::new(2, vec![-1])?, charge)?;
    Ok((plus / unknot, minus / unknot))
}

/// Braid-closure invariant with every strand colored by `charge`.
///
/// `V = Ṽ κ_+^{-w_+} κ_-^{-w_-} / d_charge`, where `w_±` count positive and
/// negative letters. The unknot evaluates to 1.
pub fn closure_invariant(model: &AnyonModel, word: &BraidWord, charge: Label) -> Result<KnotInvariantResult> {
    let raw = braid_trace(model, word, charge)?;
    let (kappa_plus, kappa_minus) = markov_constants(model, charge)?;
    let positive = word.letters().iter().filter(|&&g| g > 0).count() as i32;
    let negative = word.letters().iter().filter(|&&g| g < 0).count() as i32;
    let normalized = raw * kappa_plus.powi(-positive) * kappa_minus.powi(-negative) / model.qdim(charge);
    Ok(KnotInvariantResult {
        raw,
        normalized,
        strands: word.strands(),
        writhe: word.writhe(),
        kappa_plus,
        kappa_minus,
    })
}

/// Distances closer than this are ties, broken by length then letters.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SectorSpec {
    pub charge: Label,
    pub strands: usize,
    pub total: Label,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Skip words containing `g, -g` or a far-commuting pair in descending order.
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { prune: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Compilation {
    pub word: BraidWord,
    pub distance: f64,
    /// Words whose distance was evaluated.
    pub explored: u64,
}

/// Exhaustive search over words of length `0..=max_len` for the one closest
/// to `target` up to global phase.
pub fn compile_unitary(
    model: &AnyonModel,
    sector: SectorSpec,
    target: &ComplexMatrix,
    max_len: usize,
    options: SearchOptions,
) -> Result<Compilation> {
    if max_len == 0 {
        return Err(Error::Input("max_len must be positive".into()));
    }
    let rep = BraidRepresentation::new(model, sector.charge, sector.strands, sector.total)?;
    if !target.is_square() || target.rows() != rep.dim() {
        return Err(Error::Input(format!(
            "target is {}x{} but the fusion space has dimension {}",
            target.rows(),
            target.cols(),
            rep.dim()
        )));
    }
    let residual = target.unitarity_residual();
    if residual > 1e-6 {
        return Err(Error::Input(format!("target is not unitary (residual {residual:.3e})")));
    }
    let mut search = Search {
        rep: &rep,
        target,
        letters: letters_for(sector.strands),
        max_len,
        prune: options.prune,
        prefix: Vec::with_capacity(max_len),
        best: None,
        explored: 0,
    };
    search.visit(&ComplexMatrix::identity(rep.dim()));
    let (distance, letters) = search.best.expect("the empty word is always a candidate");
    Ok(Compilation {
        word: BraidWord {
            strands: sector.strands,
            letters,
        },
        distance,
        explored: search.explored,
    })
}

/// Whether `next` may follow `prev` in a pruned search word.
pub fn canonical_successor(prev: i32, next: i32) -> bool {
    if prev == -next {
        return false;
    }
    let far = prev.unsigned_abs().abs_diff(next.unsigned_abs()) >= 2;
    !(far && prev > next)
}

struct Search<'a> {
    rep: &'a BraidRepresentation,
    target: &'a ComplexMatrix,
    letters: Vec<i32>,
    max_len: usize,
    prune: bool,
    prefix: Vec<i32>,
    best: Option<(f64, Vec<i32>)>,
    explored: u64,
}

impl Search<'_> {
    fn visit(&mut self, u: &ComplexMatrix) {
        self.explored += 1;
        let d = phase_distance(u, self.target);
        let better = match &self.best {
            None => true,
            Some((best_d, best_w)) => {
                d < best_d - TIE_TOLERANCE
                    || (d <= best_d + TIE_TOLERANCE
                        && (self.prefix.len(), self.prefix.as_slice()) < (best_w.len(), best_w.as_slice()))
            }
        };
        if better {
            self.best = Some((d, self.prefix.clone()));
        }
        if self.prefix.len() == self.max_len {
            return;
        }
        for k in 0..self.letters.len() {
            let g = self.letters[k];
            if self.prune {
                if let Some(&prev) = self.prefix.last() {
                    if !canonical_successor(prev, g) {
                        continue;
                    }
                }
            }
            let next = self.rep.generator(g) * u;
            self.prefix.push(g);
            self.visit(&next);
            self.prefix.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{fibonacci, golden_ratio, trivial};
    use std::f64::consts::PI;

    const I: Label = Label(0);
    const T: Label = Label(1);

    #[test]
    fn parse_examples() {
        let w = parse_braid("1 -2 1", 3).unwrap();
        assert_eq!(w.letters(), &[1, -2, 1]);
        assert_eq!(w.writhe(), 1);
        assert!(parse_braid("", 1).unwrap().is_empty());
        assert!(matches!(parse_braid("3", 3), Err(Error::Parse { position: 1, .. })));
        assert!(matches!(parse_braid("1 2 0", 3), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_braid("1 x", 3), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(parse_braid("1.5", 3), Err(Error::Parse { .. })));
        assert_eq!(parse_braid("  1\t-1\n2 ", 3).unwrap().to_string(), "1 -1 2");
    }

    #[test]
    fn evaluate_examples() {
        let m = fibonacci();
        let e = evaluate(&m, &BraidWord::empty(3).unwrap(), T, T).unwrap();
        assert_eq!(e, ComplexMatrix::identity(2));
        let a = evaluate(&m, &parse_braid("1 2 1", 3).unwrap(), T, T).unwrap();
        let b = evaluate(&m, &parse_braid("2 1 2", 3).unwrap(), T, T).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
        let ten = parse_braid(&["1"; 10].join(" "), 2).unwrap();
        let u = evaluate(&m, &ten, T, I).unwrap();
        assert!((u[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(evaluate(&m, &BraidWord::empty(1).unwrap(), T, I).is_err());
    }

    #[test]
    fn unknot_and_trefoil() {
        let m = fibonacci();
        let v = closure_invariant(&m, &BraidWord::empty(1).unwrap(), T).unwrap();
        assert!((v.normalized - C64::new(1.0, 0.0)).norm() < 1e-12);

        let r = [
            C64::from_polar(1.0, -4.0 * PI / 5.0),
            C64::from_polar(1.0, 3.0 * PI / 5.0),
        ];
        let d = [1.0, golden_ratio()];
        let trefoil = closure_invariant(&m, &parse_braid("1 1 1", 2).unwrap(), T).unwrap();
        let oracle_raw = r[0].powi(3) * d[0] + r[1].powi(3) * d[1];
        assert!((trefoil.raw - oracle_raw).norm() < 1e-12);
        let expect = trefoil.kappa_plus.powi(-3) * oracle_raw / golden_ratio();
        assert!((trefoil.normalized - expect).norm() < 1e-12);
        assert!(trefoil.normalized.im.abs() > 0.1);
    }

    #[test]
    fn trivial_model_invariant_is_one() {
        let m = trivial();
        let w = parse_braid("1 -2 3 1", 4).unwrap();
        let v = closure_invariant(&m, &w, I).unwrap();
        assert!((v.normalized - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn compile_recovers_generator() {
        let m = fibonacci();
        let sector = SectorSpec {
            charge: T,
            strands: 3,
            total: T,
        };
        let target = evaluate(&m, &parse_braid("1", 3).unwrap(), T, T).unwrap();
        let c = compile_unitary(&m, sector, &target, 4, SearchOptions::default()).unwrap();
        assert_eq!(c.word.letters(), &[1]);
        assert!(c.distance < 1e-12);
    }

    #[test]
    fn compile_rejects_bad_targets() {
        let m = fibonacci();
        let sector = SectorSpec {
            charge: T,
            strands: 3,
            total: T,
        };
        let wrong_dim = ComplexMatrix::identity(3);
        assert!(compile_unitary(&m, sector, &wrong_dim, 2, SearchOptions::default()).is_err());
        let non_unitary = ComplexMatrix::identity(2).scale(C64::new(2.0, 0.0));
        assert!(compile_unitary(&m, sector, &non_unitary, 2, SearchOptions::default()).is_err());
        assert!(compile_unitary(&m, sector, &ComplexMatrix::identity(2), 0, SearchOptions::default()).is_err());
    }

    #[test]
    fn canonical_successor_rules() {
        assert!(!canonical_successor(2, -2));
        assert!(canonical_successor(2, 2));
        assert!(canonical_successor(1, 2));
        assert!(canonical_successor(1, 3));
        assert!(!canonical_successor(3, 1));
        assert!(!canonical_successor(3, -1));
        assert!(canonical_successor(-3, 1));
    }
}
