//! Graded skew Clifford algebras: relations, elimination of the degree-two
//! generators and the regularity certificate.

use thiserror::Error;

use crate::coeff::Field;
use crate::freealg::{MonomialOrder, NCPoly, Word};
use crate::geometry::ProbeOptions;
use crate::linalg::{nullspace, rref};
use crate::rewrite::{complete_truncated, hilbert_function, Presentation, RewriteError};
use crate::skew::{
    base_point_free, is_normalizing_sequence, BasePointVerdict, MuData, MuSymMatrix,
    NormalityReport, QuadricSystem, SkewError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GscaError {
    #[error("expected {expected} matrices, got {got}")]
    WrongMatrixCount { expected: usize, got: usize },
    #[error("the matrices are linearly dependent; the quadratic reduction is unavailable")]
    MatricesDependent,
    #[error("central degree-two generators need mu = 1 throughout")]
    CentralNeedsCommutativeMu,
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GscaInput<F: Field> {
    mu: MuData<F>,
    matrices: Vec<MuSymMatrix<F>>,
}

impl<F: Field> GscaInput<F> {
    pub fn new(mu: MuData<F>, matrices: Vec<MuSymMatrix<F>>) -> Result<Self, GscaError> {
        let n = mu.n();
        if matrices.len() != n {
            return Err(GscaError::WrongMatrixCount {
                expected: n,
                got: matrices.len(),
            });
        }
        for m in &matrices {
            // re-validate against this mu
            MuSymMatrix::new(m.rows().to_vec(), &mu)?;
        }
        Ok(GscaInput { mu, matrices })
    }

    pub fn n(&self) -> usize {
        self.mu.n()
    }

    pub fn mu(&self) -> &MuData<F> {
        &self.mu
    }

    pub fn matrices(&self) -> &[MuSymMatrix<F>] {
        &self.matrices
    }

    pub fn quadric_system(&self) -> QuadricSystem<F> {
        QuadricSystem::from_matrices(&self.mu, &self.matrices)
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
    }

    fn x_part(&self, i: usize, j: usize) -> NCPoly<F> {
        let mut f = NCPoly::word(Word::from_letters(&[i, j]));
        f.add_term(Word::from_letters(&[j, i]), self.mu.get(i, j));
        f
    }
}

/// `x_i x_j + mu_ij x_j x_i = sum_k (M_k)_ij y_k` for one pair `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GscaRelation<F: Field> {
    pub i: usize,
    pub j: usize,
    pub x_part: NCPoly<F>,
    pub y_coeffs: Vec<F>,
}

impl<F: Field> GscaRelation<F> {
    pub fn display_with(&self, x_names: &[String], y_names: &[String]) -> String {
        let lhs = self
            .x_part
            .display_with(x_names, &MonomialOrder::natural(x_names.len()));
        let y = NCPoly::from_terms(
            self.y_coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Word::letter(k), c.clone())),
        );
        format!(
            "{lhs} = {}",
            y.display_with(y_names, &MonomialOrder::natural(y_names.len()))
        )
    }
}

pub fn build_gsca_relations<F: Field>(input: &GscaInput<F>) -> Vec<GscaRelation<F>> {
    input
        .pairs()
        .into_iter()
        .map(|(i, j)| GscaRelation {
            i,
            j,
            x_part: input.x_part(i, j),
            y_coeffs: input.matrices.iter().map(|m| m.get(i, j).clone()).collect(),
        })
        .collect()
}

/// Quadratic x-presentation together with each `y_k` written in the `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination<F: Field> {
    pub presentation: Presentation<F>,
    pub y_solution: Vec<NCPoly<F>>,
}

/// Solves for the `y_k` from independent pair equations; the left kernel of
/// the coefficient matrix gives the relations purely in `x`.
pub fn eliminate_y<F: Field>(
    input: &GscaInput<F>,
    names: Vec<String>,
) -> Result<Elimination<F>, GscaError> {
    let n = input.n();
    let rels = build_gsca_relations(input);
    let c: Vec<Vec<F>> = rels.iter().map(|r| r.y_coeffs.clone()).collect();
    let npairs = c.len();
    let ct: Vec<Vec<F>> = (0..n)
        .map(|k| c.iter().map(|row| row[k].clone()).collect())
        .collect();
    let mut ech = ct.clone();
    let pivot_rows = rref(&mut ech);
    if pivot_rows.len() < n {
        return Err(GscaError::MatricesDependent);
    }
    let order = MonomialOrder::natural(n);
    let relations: Vec<NCPoly<F>> = nullspace(&ct, npairs)
        .into_iter()
        .map(|lambda| {
            let mut f = NCPoly::zero();
            for (l, r) in lambda.iter().zip(&rels) {
                f = f.add(&r.x_part.scale(l));
            }
            f.monic(&order)
        })
        .filter(|f| !f.is_zero())
        .collect();
    // invert the square block on the pivot rows: [C_R^T | I]
    let mut aug: Vec<Vec<F>> = (0..n)
        .map(|k| {
            let mut row: Vec<F> = pivot_rows.iter().map(|&r| c[r][k].clone()).collect();
            row.extend((0..n).map(|t| if t == k { F::one() } else { F::zero() }));
            row
        })
        .collect();
    rref(&mut aug);
    // row t of the reduced block gives w_t with sum_k w_t[k] C_R[k'] ... so
    // y_k = sum_t (C_R^{-T})_{t k} x_part(r_t)
    let y_solution = (0..n)
        .map(|k| {
            let mut f = NCPoly::zero();
            for (t, &r) in pivot_rows.iter().enumerate() {
                f = f.add(&rels[r].x_part.scale(&aug[t][n + k]));
            }
            f
        })
        .collect();
    Ok(Elimination {
        presentation: Presentation::new(names, relations)?,
        y_solution,
    })
}

/// `y_k x_i - x_i y_k` with `y_k` substituted: relations that make the
/// degree-two generators central. Needs `mu = 1`.
pub fn central_y_relations<F: Field>(
    input: &GscaInput<F>,
    elim: &Elimination<F>,
) -> Result<Vec<NCPoly<F>>, GscaError> {
    let n = input.n();
    if (0..n).any(|i| (0..n).any(|j| !input.mu.get(i, j).is_one())) {
        return Err(GscaError::CentralNeedsCommutativeMu);
    }
    // keep only commutators not already in the ideal; membership in degree 3
    // is exact with truncation 3
    let names = elim.presentation.names().to_vec();
    let order = MonomialOrder::natural(n);
    let mut out: Vec<NCPoly<F>> = Vec::new();
    for y in &elim.y_solution {
        for i in 0..n {
            let x = NCPoly::generator(i);
            let f = y.mul(&x).sub(&x.mul(y));
            if f.is_zero() {
                continue;
            }
            let mut rels = elim.presentation.relations().to_vec();
            rels.extend(out.iter().cloned());
            let rs = complete_truncated(&Presentation::new(names.clone(), rels)?, 3, &order)?;
            if !rs.normal_form(&f)?.is_zero() {
                out.push(f);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotRegularReason<F: Field> {
    /// 1-based index of the first quadric that is not normal.
    NotNormalizing(usize),
    BasePoint {
        witness: Option<[Vec<F>; 2]>,
    },
    HilbertMismatch {
        degree: usize,
        expected: u64,
        found: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularity<F: Field> {
    CertifiedRegular,
    NotRegular(NotRegularReason<F>),
    Inconclusive(String),
}

/// Properties that follow from a positive certificate by the regularity
/// theorem; recorded, not computed.
pub const REGULAR_CONSEQUENCES: [&str; 5] = [
    "quadratic",
    "Auslander-regular of global dimension n",
    "Cohen-Macaulay",
    "noetherian domain",
    "Hilbert series 1/(1-t)^n",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCertificate<F: Field> {
    pub normalizing: Vec<NormalityReport<F>>,
    /// `None` when the normalizing check already failed.
    pub base_point_free: Option<BasePointVerdict<F>>,
    /// Hilbert function of the x-presentation in degrees `0..=D`.
    pub hilbert: Option<Vec<u64>>,
    pub hilbert_match: Option<bool>,
    pub conclusion: Regularity<F>,
    pub consequences: Vec<&'static str>,
}

/// `C(m + n - 1, n - 1)`, the dimensions of a polynomial ring.
pub fn polynomial_ring_dims(n: usize, degree: usize) -> Vec<u64> {
    (0..=degree)
        .map(|m| {
            let mut v: u128 = 1;
            for t in 1..n {
                v = v * (m + t) as u128 / t as u128;
            }
            u64::try_from(v).unwrap_or(u64::MAX)
        })
        .collect()
}

pub fn certify_regular<F: Field>(
    input: &GscaInput<F>,
    names: Vec<String>,
    degree: usize,
    probe: &ProbeOptions,
) -> Result<RegularityCertificate<F>, GscaError> {
    let n = input.n();
    let q = input.quadric_system();
    let s = input
        .mu
        .skew_ring((1..=n).map(|i| format!("z{i}")).collect());
    let order = MonomialOrder::natural(n);
    let normalizing = is_normalizing_sequence(q.quadrics(), &s, degree.max(3), &order)?;
    let mut cert = RegularityCertificate {
        normalizing,
        base_point_free: None,
        hilbert: None,
        hilbert_match: None,
        conclusion: Regularity::Inconclusive(String::new()),
        consequences: Vec::new(),
    };
    if let Some(k) = cert.normalizing.iter().position(|r| !r.is_normal) {
        cert.conclusion = Regularity::NotRegular(NotRegularReason::NotNormalizing(k + 1));
        return Ok(cert);
    }
    let bpf = base_point_free(&q, degree, probe)?;
    cert.base_point_free = Some(bpf.clone());
    let mismatch = match eliminate_y(input, names) {
        Ok(elim) => {
            let rs = complete_truncated(&elim.presentation, degree.max(2), &order)?;
            let h = hilbert_function(&rs, degree)?.values;
            let expected = polynomial_ring_dims(n, degree);
            let first_diff = (0..=degree).find(|&m| h[m] != expected[m]);
            cert.hilbert_match = Some(first_diff.is_none());
            let out = first_diff.map(|m| NotRegularReason::HilbertMismatch {
                degree: m,
                expected: expected[m],
                found: h[m],
            });
            cert.hilbert = Some(h);
            out
        }
        Err(GscaError::MatricesDependent) => None,
        Err(e) => return Err(e),
    };
    cert.conclusion = match (bpf, mismatch, cert.hilbert_match) {
        (BasePointVerdict::NotFree { witness }, _, _) => {
            Regularity::NotRegular(NotRegularReason::BasePoint { witness })
        }
        (_, Some(reason), _) => Regularity::NotRegular(reason),
        (BasePointVerdict::Inconclusive, _, _) => Regularity::Inconclusive(
            "quotient of the skew ring not certified at this truncation".into(),
        ),
        (_, _, None) => Regularity::Inconclusive("matrices are linearly dependent".into()),
        (BasePointVerdict::Free { .. }, None, Some(true)) => Regularity::CertifiedRegular,
        (_, None, Some(false)) => unreachable!("a mismatch always has a reason"),
    };
    if cert.conclusion == Regularity::CertifiedRegular {
        cert.consequences = REGULAR_CONSEQUENCES.to_vec();
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rational;
    use crate::rewrite::normal_form;

    type P = NCPoly<Rational>;

    fn r(v: i64) -> Rational {
        Rational::integer(v)
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|row| row.iter().map(|&v| r(v)).collect())
            .collect()
    }

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }

    fn input(mats: &[&[&[i64]]]) -> GscaInput<Rational> {
        let mu = MuData::ones(mats.len());
        let ms = mats
            .iter()
            .map(|m| MuSymMatrix::new(mat(m), &mu).unwrap())
            .collect();
        GscaInput::new(mu, ms).unwrap()
    }

    fn clifford3() -> GscaInput<Rational> {
        input(&[
            &[&[2, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            &[&[0, 0, 0], &[0, 2, 0], &[0, 0, 0]],
            &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]],
        ])
    }

    fn x(i: usize) -> P {
        P::generator(i)
    }

    #[test]
    fn relations_of_clifford3() {
        let rels = build_gsca_relations(&clifford3());
        let ys: Vec<String> = (1..=3).map(|k| format!("y{k}")).collect();
        let shown: Vec<String> = rels
            .iter()
            .map(|r| r.display_with(&names(3), &ys))
            .collect();
        assert!(shown.contains(&"2*x1^2 = 2*y1".to_string()), "{shown:?}");
        assert!(
            shown.contains(&"x2*x1 + x1*x2 = y3".to_string()),
            "{shown:?}"
        );
        assert!(shown.contains(&"2*x3^2 = 2*y3".to_string()), "{shown:?}");
    }

    #[test]
    fn elimination_of_clifford3() {
        let e = eliminate_y(&clifford3(), names(3)).unwrap();
        let mut got = e.presentation.relations().to_vec();
        let expected = vec![
            x(0).mul(&x(1)).add(&x(1).mul(&x(0))).sub(&x(2).pow(2)),
            x(0).mul(&x(2)).add(&x(2).mul(&x(0))),
            x(1).mul(&x(2)).add(&x(2).mul(&x(1))),
        ];
        let order = MonomialOrder::natural(3);
        got.sort_by(|a, b| {
            a.leading(&order)
                .unwrap()
                .0
                .cmp(b.leading(&order).unwrap().0)
        });
        let mut exp: Vec<P> = expected.iter().map(|f| f.monic(&order)).collect();
        exp.sort_by(|a, b| {
            a.leading(&order)
                .unwrap()
                .0
                .cmp(b.leading(&order).unwrap().0)
        });
        assert_eq!(got, exp);
        let rs = complete_truncated(&e.presentation, 4, &order).unwrap();
        for (y, expected) in e
            .y_solution
            .iter()
            .zip([x(0).pow(2), x(1).pow(2), x(2).pow(2)])
        {
            assert!(normal_form(&y.sub(&expected), &rs).unwrap().is_zero());
        }
    }

    #[test]
    fn substitution_identity() {
        let inp = clifford3();
        let e = eliminate_y(&inp, names(3)).unwrap();
        let rs = complete_truncated(&e.presentation, 4, &MonomialOrder::natural(3)).unwrap();
        for rel in build_gsca_relations(&inp) {
            let mut f = rel.x_part.clone();
            for (c, y) in rel.y_coeffs.iter().zip(&e.y_solution) {
                f = f.sub(&y.scale(c));
            }
            assert!(normal_form(&f, &rs).unwrap().is_zero());
        }
    }

    #[test]
    fn dependent_matrices() {
        let m = &[&[1, 0][..], &[0, 1][..]][..];
        assert_eq!(
            eliminate_y(&input(&[m, m]), names(2)),
            Err(GscaError::MatricesDependent)
        );
    }

    #[test]
    fn certificates() {
        let probe = ProbeOptions::default();
        let c = certify_regular(&clifford3(), names(3), 12, &probe).unwrap();
        assert_eq!(c.conclusion, Regularity::CertifiedRegular);
        assert_eq!(&c.hilbert.unwrap()[..5], &[1, 3, 6, 10, 15]);

        let cl = input(&[&[&[2, -1], &[-1, 0]], &[&[0, -1], &[-1, 2]]]);
        let c = certify_regular(&cl, names(2), 12, &probe).unwrap();
        assert_eq!(
            c.conclusion,
            Regularity::NotRegular(NotRegularReason::BasePoint {
                witness: Some([vec![r(1), r(1)], vec![r(1), r(1)]])
            })
        );

        let z = &[&[0, 0][..], &[0, 0][..]][..];
        let c = certify_regular(&input(&[z, z]), names(2), 8, &probe).unwrap();
        assert!(matches!(
            c.conclusion,
            Regularity::NotRegular(NotRegularReason::BasePoint { witness: Some(_) })
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(polynomial_ring_dims(3, 4), vec![1, 3, 6, 10, 15]);
        assert_eq!(polynomial_ring_dims(1, 2), vec![1, 1, 1]);
    }
}
