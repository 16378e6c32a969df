//! Skew polynomial rings `S = k<z_1..z_n> / (z_j z_i - mu_ij z_i z_j)`,
//! mu-symmetric matrices, quadric systems, normality and base-point
//! freeness.

use thiserror::Error;

use crate::coeff::Field;
use crate::freealg::{MonomialOrder, NCPoly, Word};
use crate::geometry::{search_annihilated_point, PointSequence, ProbeOptions};
use crate::linalg::Echelon;
use crate::rewrite::{
    classify_growth, complete_truncated, GrowthKind, Presentation, RewriteError, RewriteSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("mu_{i}{j} * mu_{j}{i} != 1")]
    MuAxiomViolation { i: usize, j: usize },
    #[error("mu_{0}{0} != 1")]
    DiagonalNotOne(usize),
    #[error("matrix size {got} does not match n = {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("matrix is not mu-symmetric at ({i}, {j})")]
    NotMuSymmetric { i: usize, j: usize },
    #[error("element is not a degree-2 canonical lift")]
    NotCanonicalLift,
    #[error("element {0} of the sequence is not normal modulo its predecessors")]
    NotNormalizing(usize),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// Validated twisting data: `mu_ij mu_ji = 1` and `mu_ii = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuData<F: Field> {
    mu: Vec<Vec<F>>,
}

/// Checks the mu axioms. Indices in errors are 1-based.
pub fn validate_mu<F: Field>(raw: Vec<Vec<F>>) -> Result<MuData<F>, SkewError> {
    let n = raw.len();
    if raw.iter().any(|r| r.len() != n) {
        return Err(SkewError::NotSquare);
    }
    for i in 0..n {
        if !raw[i][i].is_one() {
            return Err(SkewError::DiagonalNotOne(i + 1));
        }
        for j in i + 1..n {
            if !raw[i][j].mul(&raw[j][i]).is_one() {
                return Err(SkewError::MuAxiomViolation { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(MuData { mu: raw })
}

impl<F: Field> MuData<F> {
    /// The commutative case, `mu_ij = 1`.
    pub fn ones(n: usize) -> Self {
        MuData {
            mu: vec![vec![F::one(); n]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.mu[i][j]
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.mu
    }

    /// `z_j z_i - mu_ij z_i z_j` for `i < j`.
    pub fn skew_relations(&self) -> Vec<NCPoly<F>> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let ji = NCPoly::word(Word::from_letters(&[j, i]));
                let ij = NCPoly::term(Word::from_letters(&[i, j]), self.mu[i][j].clone());
                out.push(ji.sub(&ij));
            }
        }
        out
    }

    pub fn skew_ring(&self, names: Vec<String>) -> Presentation<F> {
        Presentation::new(names, self.skew_relations()).expect("skew relations are quadratic")
    }

    /// Rewrites any degree-2 element into PBW form (words `z_i z_j`, `i <= j`).
    pub fn canonical_lift(&self, f: &NCPoly<F>) -> Result<NCPoly<F>, SkewError> {
        if !f.is_zero() && f.degree() != Some(2) {
            return Err(SkewError::NotCanonicalLift);
        }
        let mut out = NCPoly::zero();
        for (w, c) in f.terms() {
            let (a, b) = (w.letters()[0] as usize, w.letters()[1] as usize);
            if a <= b {
                out.add_term(w.clone(), c);
            } else {
                // z_a z_b with a > b equals mu_ba z_b z_a
                out.add_term(Word::from_letters(&[b, a]), &c.mul(&self.mu[b][a]));
            }
        }
        Ok(out)
    }
}

/// An `n x n` matrix with `M_ij = mu_ij M_ji`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuSymMatrix<F: Field> {
    entries: Vec<Vec<F>>,
}

impl<F: Field> MuSymMatrix<F> {
    pub fn new(entries: Vec<Vec<F>>, mu: &MuData<F>) -> Result<Self, SkewError> {
        let n = mu.n();
        if entries.len() != n {
            return Err(SkewError::SizeMismatch {
                expected: n,
                got: entries.len(),
            });
        }
        if entries.iter().any(|r| r.len() != n) {
            return Err(SkewError::NotSquare);
        }
        for i in 0..n {
            for j in 0..n {
                if entries[i][j] != mu.get(i, j).mul(&entries[j][i]) {
                    return Err(SkewError::NotMuSymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(MuSymMatrix { entries })
    }

    pub fn zero(n: usize) -> Self {
        MuSymMatrix {
            entries: vec![vec![F::zero(); n]; n],
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(F::is_zero)
    }
}

/// `sum_ij M_ij z_i z_j` in PBW form, before normalisation.
pub(crate) fn quadric_raw<F: Field>(m: &MuSymMatrix<F>, mu: &MuData<F>) -> NCPoly<F> {
    let n = m.n();
    let mut q = NCPoly::zero();
    for i in 0..n {
        for j in 0..n {
            q.add_term(Word::from_letters(&[i, j]), m.get(i, j));
        }
    }
    mu.canonical_lift(&q).expect("degree 2")
}

/// The quadric `z^T M z` of a mu-symmetric matrix as a canonical lift,
/// scaled monic under the natural order.
pub fn quadric_of_matrix<F: Field>(m: &MuSymMatrix<F>, mu: &MuData<F>) -> NCPoly<F> {
    quadric_raw(m, mu).monic(&MonomialOrder::natural(mu.n()))
}

/// The mu-symmetric matrix of a canonical-lift quadric, normalised so that
/// `quadric_of_matrix` returns the input (for monic input).
pub fn matrix_of_quadric<F: Field>(
    q: &NCPoly<F>,
    mu: &MuData<F>,
) -> Result<MuSymMatrix<F>, SkewError> {
    let n = mu.n();
    let mut e = vec![vec![F::zero(); n]; n];
    for (w, c) in q.terms() {
        let l = w.letters();
        if l.len() != 2 || l[0] > l[1] || l[1] as usize >= n {
            return Err(SkewError::NotCanonicalLift);
        }
        let (i, j) = (l[0] as usize, l[1] as usize);
        if i == j {
            e[i][i] = c.add(c);
        } else {
            e[i][j] = c.clone();
            e[j][i] = mu.get(j, i).mul(c);
        }
    }
    Ok(MuSymMatrix { entries: e })
}

/// A list of degree-2 elements of `S`, stored as canonical lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSystem<F: Field> {
    quadrics: Vec<NCPoly<F>>,
    mu: MuData<F>,
}

impl<F: Field> QuadricSystem<F> {
    pub fn from_matrices(mu: &MuData<F>, matrices: &[MuSymMatrix<F>]) -> Self {
        QuadricSystem {
            quadrics: matrices.iter().map(|m| quadric_of_matrix(m, mu)).collect(),
            mu: mu.clone(),
        }
    }

    /// Canonicalises arbitrary degree-2 elements of `S`.
    pub fn from_elements(mu: &MuData<F>, elems: &[NCPoly<F>]) -> Result<Self, SkewError> {
        let quadrics = elems
            .iter()
            .map(|f| Ok(mu.canonical_lift(f)?.monic(&MonomialOrder::natural(mu.n()))))
            .collect::<Result<_, SkewError>>()?;
        Ok(QuadricSystem {
            quadrics,
            mu: mu.clone(),
        })
    }

    pub fn quadrics(&self) -> &[NCPoly<F>] {
        &self.quadrics
    }

    pub fn mu(&self) -> &MuData<F> {
        &self.mu
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityReport<F: Field> {
    pub is_normal: bool,
    pub checked_degree: usize,
    /// An element of `f A_1` outside `A_1 f`, or the reverse.
    pub witness: Option<NCPoly<F>>,
}

/// Normality of `f` in the algebra presented by `rs`: compares the spans of
/// `f x_j` and `x_i f` in degree `deg f + 1`. For algebras generated in
/// degree one this is equivalent to `fA = Af`.
pub fn is_normal_in<F: Field>(
    f: &NCPoly<F>,
    rs: &RewriteSystem<F>,
) -> Result<NormalityReport<F>, RewriteError> {
    let d = f.max_degree();
    let checked_degree = d + 1;
    let f = rs.normal_form(f)?;
    if f.is_zero() {
        return Ok(NormalityReport {
            is_normal: true,
            checked_degree,
            witness: None,
        });
    }
    let n = rs.n();
    let mut left: Echelon<Word, F> = Echelon::new();
    let mut right: Echelon<Word, F> = Echelon::new();
    let mut lefts = Vec::with_capacity(n);
    let mut rights = Vec::with_capacity(n);
    for i in 0..n {
        let x = NCPoly::generator(i);
        let l = rs.normal_form(&x.mul(&f))?;
        let r = rs.normal_form(&f.mul(&x))?;
        left.insert(l.clone().into_map(), None);
        right.insert(r.clone().into_map(), None);
        lefts.push(l);
        rights.push(r);
    }
    let witness = rights
        .iter()
        .find(|r| !left.contains(&(*r).clone().into_map()))
        .or_else(|| {
            lefts
                .iter()
                .find(|l| !right.contains(&(*l).clone().into_map()))
        })
        .cloned();
    Ok(NormalityReport {
        is_normal: witness.is_none(),
        checked_degree,
        witness,
    })
}

pub fn is_normal<F: Field>(
    f: &NCPoly<F>,
    p: &Presentation<F>,
    degree: usize,
    order: &MonomialOrder,
) -> Result<NormalityReport<F>, RewriteError> {
    let need = f.max_degree() + 1;
    if degree < need {
        return Err(RewriteError::DegreeExceedsTruncation {
            degree: need,
            truncation: degree,
        });
    }
    let rs = complete_truncated(p, degree.max(p.max_degree()), order)?;
    is_normal_in(f, &rs)
}

/// Report `k` states normality of `f_k` modulo `f_1..f_{k-1}`.
pub fn is_normalizing_sequence<F: Field>(
    fs: &[NCPoly<F>],
    p: &Presentation<F>,
    degree: usize,
    order: &MonomialOrder,
) -> Result<Vec<NormalityReport<F>>, RewriteError> {
    let mut out = Vec::with_capacity(fs.len());
    for k in 0..fs.len() {
        let q = p.adjoin(&fs[..k])?;
        out.push(is_normal(&fs[k], &q, degree.max(q.max_degree()), order)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasePointVerdict<F: Field> {
    /// `S / (Q)` is finite-dimensional of this dimension.
    Free {
        dimension: u64,
    },
    /// `S / (Q)` is infinite-dimensional; an exact base point when one was
    /// found over the rationals.
    NotFree {
        witness: Option<[Vec<F>; 2]>,
    },
    Inconclusive,
}

/// Decides base-point freeness of a normalizing quadric system through
/// finite-dimensionality of `S / (Q)`.
pub fn base_point_free<F: Field>(
    q: &QuadricSystem<F>,
    degree: usize,
    probe: &ProbeOptions,
) -> Result<BasePointVerdict<F>, SkewError> {
    let n = q.mu.n();
    let names: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    let s = q.mu.skew_ring(names);
    let order = MonomialOrder::natural(n);
    let degree = degree.max(3);
    let reports = is_normalizing_sequence(&q.quadrics, &s, degree, &order)?;
    if let Some(k) = reports.iter().position(|r| !r.is_normal) {
        return Err(SkewError::NotNormalizing(k + 1));
    }
    let quotient = s.adjoin(&q.quadrics)?;
    let rs = complete_truncated(&quotient, degree, &order)?;
    if !rs.is_certified() {
        return Ok(BasePointVerdict::Inconclusive);
    }
    match classify_growth(&rs)?.kind {
        GrowthKind::FiniteDimensional { dimension } => Ok(BasePointVerdict::Free { dimension }),
        _ => {
            let found = search_annihilated_point(&s, &q.quadrics, Some(2), probe);
            let witness = found.map(|PointSequence { mut points }| {
                let b = points.pop().expect("two points");
                let a = points.pop().expect("two points");
                [a, b]
            });
            Ok(BasePointVerdict::NotFree { witness })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rational;

    type P = NCPoly<Rational>;

    fn r(v: i64) -> Rational {
        Rational::integer(v)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|row| row.iter().map(|&v| r(v)).collect())
            .collect()
    }

    fn z(i: usize) -> P {
        P::generator(i)
    }

    #[test]
    fn mu_validation() {
        assert!(validate_mu(mat(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]])).is_ok());
        let half = Rational::new(1, 2).unwrap();
        assert!(validate_mu(vec![vec![r(1), r(2)], vec![half, r(1)]]).is_ok());
        assert_eq!(
            validate_mu(mat(&[&[1, 2], &[2, 1]])),
            Err(SkewError::MuAxiomViolation { i: 1, j: 2 })
        );
        assert_eq!(
            validate_mu(mat(&[&[2, 1], &[1, 1]])),
            Err(SkewError::DiagonalNotOne(1))
        );
    }

    #[test]
    fn clifford3_quadrics() {
        let mu = MuData::ones(3);
        let m1 = MuSymMatrix::new(mat(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, 0]]), &mu).unwrap();
        let m3 = MuSymMatrix::new(mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]]), &mu).unwrap();
        assert_eq!(quadric_of_matrix(&m1, &mu), z(0).pow(2));
        assert_eq!(
            quadric_of_matrix(&m3, &mu),
            z(0).mul(&z(1)).add(&z(2).pow(2))
        );
        assert!(quadric_of_matrix(&MuSymMatrix::zero(3), &mu).is_zero());
        assert_eq!(
            matrix_of_quadric(&z(0).mul(&z(1)).add(&z(2).pow(2)), &mu).unwrap(),
            m3
        );
        assert_eq!(matrix_of_quadric(&z(0).pow(2), &mu).unwrap(), m1);
        assert!(matrix_of_quadric(&P::zero(), &mu).unwrap().is_zero());
        assert_eq!(
            matrix_of_quadric(&z(1).mul(&z(0)), &mu),
            Err(SkewError::NotCanonicalLift)
        );
    }

    #[test]
    fn mu_symmetry_is_checked() {
        let mu = validate_mu(vec![
            vec![r(1), r(2)],
            vec![Rational::new(1, 2).unwrap(), r(1)],
        ])
        .unwrap();
        assert!(MuSymMatrix::new(mat(&[&[0, 2], &[1, 0]]), &mu).is_ok());
        assert_eq!(
            MuSymMatrix::new(mat(&[&[0, 1], &[1, 0]]), &mu),
            Err(SkewError::NotMuSymmetric { i: 1, j: 2 })
        );
    }

    #[test]
    fn generators_of_skew_ring_are_normal() {
        let mu = validate_mu(vec![
            vec![r(1), r(2)],
            vec![Rational::new(1, 2).unwrap(), r(1)],
        ])
        .unwrap();
        let s = mu.skew_ring(vec!["z1".into(), "z2".into()]);
        let rep = is_normal(&z(0), &s, 4, &MonomialOrder::natural(2)).unwrap();
        assert!(rep.is_normal);
        assert!(rep.witness.is_none());
        let reps = is_normalizing_sequence(&[z(0)], &s, 4, &MonomialOrder::natural(2)).unwrap();
        assert!(reps[0].is_normal);
    }

    #[test]
    fn base_points() {
        let probe = ProbeOptions::default();
        let mu = MuData::<Rational>::ones(1);
        let q = QuadricSystem::from_elements(&mu, &[z(0).pow(2)]).unwrap();
        assert_eq!(
            base_point_free(&q, 12, &probe).unwrap(),
            BasePointVerdict::Free { dimension: 2 }
        );

        let mu = MuData::<Rational>::ones(2);
        let q = QuadricSystem::from_elements(
            &mu,
            &[z(0).mul(&z(0).sub(&z(1))), z(1).mul(&z(0).sub(&z(1)))],
        )
        .unwrap();
        match base_point_free(&q, 12, &probe).unwrap() {
            BasePointVerdict::NotFree {
                witness: Some([a, b]),
            } => {
                assert_eq!(a, vec![r(1), r(1)]);
                assert_eq!(b, vec![r(1), r(1)]);
            }
            v => panic!("unexpected {v:?}"),
        }
    }
}
