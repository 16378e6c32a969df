use super::RewriteError;
use crate::coeff::Field;
use crate::freealg::{MonomialOrder, NCPoly};

/// A graded algebra `k<x_1..x_n> / (relations)` with homogeneous relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation<F: Field> {
    names: Vec<String>,
    relations: Vec<NCPoly<F>>,
}

impl<F: Field> Presentation<F> {
    /// Defining relations must be nonzero, homogeneous, of degree at least 2.
    pub fn new(names: Vec<String>, relations: Vec<NCPoly<F>>) -> Result<Self, RewriteError> {
        let p = Presentation {
            names,
            relations: Vec::new(),
        };
        p.adjoin_checked(&relations, 2, false)
    }

    /// Free algebra on the given generators.
    pub fn free(names: Vec<String>) -> Self {
        Presentation {
            names,
            relations: Vec::new(),
        }
    }

    /// Adds homogeneous elements of positive degree to the relations
    /// (forming a quotient). Zero elements are skipped.
    pub fn adjoin(&self, extra: &[NCPoly<F>]) -> Result<Self, RewriteError> {
        self.adjoin_checked(extra, 1, true)
    }

    fn adjoin_checked(
        &self,
        extra: &[NCPoly<F>],
        min: usize,
        skip_zero: bool,
    ) -> Result<Self, RewriteError> {
        let n = self.names.len();
        let mut relations = self.relations.clone();
        for (k, r) in extra.iter().enumerate() {
            let index = self.relations.len() + k;
            if r.is_zero() {
                if skip_zero {
                    continue;
                }
                return Err(RewriteError::ZeroRelation(index));
            }
            let degree = r.degree().ok_or(RewriteError::Inhomogeneous(index))?;
            if degree < min {
                return Err(RewriteError::LowDegree { index, degree, min });
            }
            if let Some(g) = r
                .terms()
                .flat_map(|(w, _)| w.letters().iter())
                .find(|&&l| l as usize >= n)
            {
                return Err(RewriteError::GeneratorOutOfRange {
                    index,
                    generator: *g as usize + 1,
                    n,
                });
            }
            relations.push(r.clone());
        }
        Ok(Presentation {
            names: self.names.clone(),
            relations,
        })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relations(&self) -> &[NCPoly<F>] {
        &self.relations
    }

    pub fn max_degree(&self) -> usize {
        self.relations
            .iter()
            .map(NCPoly::max_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn is_quadratic(&self) -> bool {
        self.relations.iter().all(|r| r.degree() == Some(2))
    }

    /// The subalgebra presentation keeping only degree-2 relations.
    pub fn quadratic_part(&self) -> Self {
        Presentation {
            names: self.names.clone(),
            relations: self
                .relations
                .iter()
                .filter(|r| r.degree() == Some(2))
                .cloned()
                .collect(),
        }
    }

    /// `max(2 * max relation degree + 6, 12)`
    pub fn default_truncation(&self) -> usize {
        (2 * self.max_degree() + 6).max(12)
    }

    pub fn display_relations(&self, order: &MonomialOrder) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| r.display_with(&self.names, order))
            .collect()
    }
}
