//! Standard fusion-tree bases and the F-move and braid-generator matrices
//! acting on them.
//!
//! A basis vector of `hom(a_1 ⊗ … ⊗ a_n, t)` is a left-associated tree
//! `((a_1 a_2) → e_1, a_3) → e_2 … → e_{n-1} = t`, stored as the sequence of
//! intermediate charges. Trees are kept in lexicographic order.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion_ring::{FusionRing, Label};
use crate::linalg::{ComplexMatrix, C64};
use crate::model::AnyonModel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionBasis {
    charges: Vec<Label>,
    total: Label,
    trees: Vec<Vec<Label>>,
}

impl FusionBasis {
    pub fn charges(&self) -> &[Label] {
        &self.charges
    }

    pub fn total(&self) -> Label {
        self.total
    }

    /// Intermediate charges `(e_1, …, e_{n-1})` of each tree.
    pub fn trees(&self) -> &[Vec<Label>] {
        &self.trees
    }

    pub fn dim(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn index_of(&self, tree: &[Label]) -> Option<usize> {
        self.trees.binary_search_by(|t| t.as_slice().cmp(tree)).ok()
    }
}

pub fn enumerate_basis(model: &AnyonModel, charges: &[Label], total: Label) -> Result<FusionBasis> {
    enumerate_in_ring(model.ring(), charges, total)
}

pub(crate) fn enumerate_in_ring(ring: &FusionRing, charges: &[Label], total: Label) -> Result<FusionBasis> {
    if charges.is_empty() {
        return Err(Error::Input("a fusion basis needs at least one charge".into()));
    }
    for &l in charges.iter().chain(std::iter::once(&total)) {
        ring.check_label(l)?;
    }
    let mut trees = Vec::new();
    if charges.len() == 1 {
        if charges[0] == total {
            trees.push(Vec::new());
        }
    } else {
        let mut prefix = Vec::with_capacity(charges.len() - 1);
        extend_trees(ring, charges, total, charges[0], &mut prefix, &mut trees);
    }
    Ok(FusionBasis {
        charges: charges.to_vec(),
        total,
        trees,
    })
}

fn extend_trees(
    ring: &FusionRing,
    charges: &[Label],
    total: Label,
    running: Label,
    prefix: &mut Vec<Label>,
    out: &mut Vec<Vec<Label>>,
) {
    let next = charges[prefix.len() + 1];
    let last = prefix.len() + 2 == charges.len();
    for e in ring.channels(running, next) {
        if last {
            if e == total {
                let mut tree = prefix.clone();
                tree.push(e);
                out.push(tree);
            }
            continue;
        }
        prefix.push(e);
        extend_trees(ring, charges, total, e, prefix, out);
        prefix.pop();
    }
}

/// Row labels `e` and column labels `f` of `F^{abc}_d`, ascending.
pub fn f_channels(ring: &FusionRing, a: Label, b: Label, c: Label, d: Label) -> (Vec<Label>, Vec<Label>) {
    let rows = ring.channels(a, b).filter(|&e| ring.admissible(e, c, d)).collect();
    let cols = ring.channels(b, c).filter(|&f| ring.admissible(a, f, d)).collect();
    (rows, cols)
}

/// `[F^{abc}_d]_{e,f}` over admissible `e` (rows) and `f` (columns).
/// Inadmissible label sets give a 0×0 matrix.
pub fn f_matrix(model: &AnyonModel, a: Label, b: Label, c: Label, d: Label) -> ComplexMatrix {
    let rank = model.rank();
    if [a, b, c, d].iter().any(|l| l.0 >= rank) {
        return ComplexMatrix::zeros(0, 0);
    }
    let (rows, cols) = f_channels(model.ring(), a, b, c, d);
    let mut m = ComplexMatrix::zeros(rows.len(), cols.len());
    for (i, &e) in rows.iter().enumerate() {
        for (j, &f) in cols.iter().enumerate() {
            m[(i, j)] = model.f(a, b, c, d, e, f);
        }
    }
    m
}

/// Matrix of one braid generator, mapping `source` to `target`. The two
/// bases differ only when the exchanged charges differ.
#[derive(Clone, Debug, PartialEq)]
pub struct BraidGenerator {
    pub matrix: ComplexMatrix,
    pub target: FusionBasis,
}

/// `σ_i` (strands `i` and `i+1`, 1-based) on a standard basis.
///
/// `σ_1` is diagonal with entries `R^{a_1 a_2}_{e_1}`. For `i ≥ 2` the pair is
/// moved into a directly fused vertex by `F^{x a_i a_{i+1}}_y` (with
/// `x = e_{i-2}`, or `a_1` when `i = 2`, and `y = e_i`), multiplied by
/// `R^{a_i a_{i+1}}`, and moved back with `(F^{x a_{i+1} a_i}_y)^{-1}`.
/// Column `e` of the matrix holds the image of basis tree `e`.
pub fn braid_generator(model: &AnyonModel, basis: &FusionBasis, i: usize) -> Result<BraidGenerator> {
    generator(model, basis, i, false)
}

/// `σ_i^{-1}`, built from inverse R phases. With differing charges this maps
/// the basis to the swapped one, like [`braid_generator`].
pub fn braid_generator_inverse(model: &AnyonModel, basis: &FusionBasis, i: usize) -> Result<BraidGenerator> {
    generator(model, basis, i, true)
}

fn generator(model: &AnyonModel, basis: &FusionBasis, i: usize, inverse: bool) -> Result<BraidGenerator> {
    let n = basis.charges.len();
    if i == 0 || i >= n {
        return Err(Error::Input(format!(
            "generator index {i} out of range for {n} strands (valid: 1..={})",
            n.saturating_sub(1)
        )));
    }
    if basis.is_empty() {
        return Err(Error::Input(
            "braid generator requested on an empty fusion space".into(),
        ));
    }
    let left = basis.charges[i - 1];
    let right = basis.charges[i];
    let target = if left == right {
        basis.clone()
    } else {
        let mut swapped = basis.charges.clone();
        swapped.swap(i - 1, i);
        enumerate_basis(model, &swapped, basis.total)?
    };
    // Exchanging `left` past `right` in channel c; the inverse undoes the
    // exchange of `right` past `left` coming from the swapped basis.
    let phase = |c: Label| -> Result<C64> {
        if inverse {
            let r = model.try_r([right, left, c])?;
            Ok(r.inv())
        } else {
            model.try_r([left, right, c])
        }
    };

    let mut matrix = ComplexMatrix::zeros(target.dim(), basis.dim());
    if i == 1 {
        for (col, tree) in basis.trees.iter().enumerate() {
            let row = target
                .index_of(tree)
                .ok_or_else(|| Error::Data("braided tree missing from target basis".into()))?;
            matrix[(row, col)] = phase(tree[0])?;
        }
        return Ok(BraidGenerator { matrix, target });
    }

    struct Move {
        rows: Vec<Label>,
        mid: Vec<Label>,
        forward: ComplexMatrix,
        back_rows: Vec<Label>,
        back: ComplexMatrix,
    }
    let mut moves: HashMap<(Label, Label), Move> = HashMap::new();
    for (col, tree) in basis.trees.iter().enumerate() {
        let x = if i == 2 { basis.charges[0] } else { tree[i - 3] };
        let m = tree[i - 2];
        let y = tree[i - 1];
        if let std::collections::hash_map::Entry::Vacant(slot) = moves.entry((x, y)) {
            let (rows, mid) = f_channels(model.ring(), x, left, right, y);
            let (back_rows, _) = f_channels(model.ring(), x, right, left, y);
            let back = f_matrix(model, x, right, left, y).inverse()?;
            slot.insert(Move {
                forward: f_matrix(model, x, left, right, y),
                rows,
                mid,
                back_rows,
                back,
            });
        }
        let mv = &moves[&(x, y)];
        let src = mv.rows.iter().position(|&e| e == m).expect("tree vertex is admissible");
        let mut image = tree.clone();
        for (k, &m_new) in mv.back_rows.iter().enumerate() {
            let mut amp = C64::new(0.0, 0.0);
            for (j, &f) in mv.mid.iter().enumerate() {
                amp += mv.forward[(src, j)] * phase(f)? * mv.back[(j, k)];
            }
            image[i - 2] = m_new;
            let row = target
                .index_of(&image)
                .ok_or_else(|| Error::Data("braided tree missing from target basis".into()))?;
            matrix[(row, col)] += amp;
        }
    }
    Ok(BraidGenerator { matrix, target })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{fibonacci, golden_ratio, trivial};
    use std::f64::consts::PI;

    const I: Label = Label(0);
    const T: Label = Label(1);

    #[test]
    fn three_tau_bases() {
        let m = fibonacci();
        let b = enumerate_basis(&m, &[T, T, T], T).unwrap();
        assert_eq!(b.trees(), &[vec![I, T], vec![T, T]]);
        let b = enumerate_basis(&m, &[T, T, T], I).unwrap();
        assert_eq!(b.trees(), &[vec![T, I]]);
    }

    #[test]
    fn single_charge_basis() {
        let m = fibonacci();
        let b = enumerate_basis(&m, &[T], T).unwrap();
        assert_eq!(b.trees(), &[Vec::<Label>::new()]);
        assert!(enumerate_basis(&m, &[T], I).unwrap().is_empty());
        assert!(enumerate_basis(&m, &[], I).is_err());
        assert!(enumerate_basis(&m, &[Label(5)], I).is_err());
    }

    #[test]
    fn f_matrix_examples() {
        let m = fibonacci();
        let phi = golden_ratio();
        let f = f_matrix(&m, T, T, T, T);
        let expect = ComplexMatrix::from_rows(vec![
            vec![C64::new(1.0 / phi, 0.0), C64::new(1.0 / phi.sqrt(), 0.0)],
            vec![C64::new(1.0 / phi.sqrt(), 0.0), C64::new(-1.0 / phi, 0.0)],
        ])
        .unwrap();
        assert!(f.max_abs_diff(&expect) < 1e-15);
        assert_eq!(f_matrix(&m, I, T, T, I), ComplexMatrix::identity(1));
        assert_eq!(f_channels(m.ring(), T, T, T, I), (vec![T], vec![T]));
        assert_eq!(f_matrix(&m, T, T, T, I).rows(), 1);
        assert_eq!(f_matrix(&m, I, I, T, I).rows(), 0);
    }

    #[test]
    fn generator_examples() {
        let m = fibonacci();
        let r1 = C64::from_polar(1.0, -4.0 * PI / 5.0);
        let rt = C64::from_polar(1.0, 3.0 * PI / 5.0);

        let b = enumerate_basis(&m, &[T, T], I).unwrap();
        let s1 = braid_generator(&m, &b, 1).unwrap();
        assert!((s1.matrix[(0, 0)] - r1).norm() < 1e-15);

        let b = enumerate_basis(&m, &[T, T, T], T).unwrap();
        let s1 = braid_generator(&m, &b, 1).unwrap().matrix;
        assert!(s1.max_abs_diff(&ComplexMatrix::from_diagonal(&[r1, rt])) < 1e-15);

        let f = f_matrix(&m, T, T, T, T);
        let expect = &(&f.inverse().unwrap() * &ComplexMatrix::from_diagonal(&[r1, rt])) * &f;
        let s2 = braid_generator(&m, &b, 2).unwrap().matrix;
        assert!(s2.max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn generator_index_and_empty_basis_errors() {
        let m = fibonacci();
        let b = enumerate_basis(&m, &[T, T, T], T).unwrap();
        assert!(braid_generator(&m, &b, 0).is_err());
        assert!(braid_generator(&m, &b, 3).is_err());
        let empty = enumerate_basis(&m, &[T], I).unwrap();
        assert!(braid_generator(&m, &empty, 1).is_err());
    }

    #[test]
    fn trivial_model_generators_are_identity() {
        let m = trivial();
        let b = enumerate_basis(&m, &[I, I, I, I], I).unwrap();
        assert_eq!(b.dim(), 1);
        for i in 1..4 {
            let g = braid_generator(&m, &b, i).unwrap();
            assert_eq!(g.matrix, ComplexMatrix::identity(1));
            assert_eq!(g.target, b);
        }
    }
}
