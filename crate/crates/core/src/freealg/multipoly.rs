use std::collections::BTreeMap;
use std::fmt;

use super::{FreeAlgError, NCPoly};
use crate::coeff::Field;

/// A commutative polynomial in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], &c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, &F::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &F) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let cur = self.terms.remove(&exps);
        let s = match cur {
            Some(a) => a.add(c),
            None => c.clone(),
        };
        if !s.is_zero() {
            self.terms.insert(exps, s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &F)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&F::one().neg()))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), &a.mul(c));
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, a) in &self.terms {
            for (e2, b) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, &a.mul(b));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, F::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `values[i]` (polynomials in a common ring) for variable `i`.
    pub fn substitute(&self, values: &[MultiPoly<F>]) -> MultiPoly<F> {
        assert_eq!(values.len(), self.nvars);
        let target = values.first().map_or(0, |v| v.nvars);
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&values[i].pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Evaluates at a point of the coefficient field.
    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let (neg, abs) = c.sign_split();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mon: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{k}", names[i])
                    }
                })
                .collect();
            let mon = mon.join("*");
            if mon.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mon);
            } else if abs.is_compound() {
                out.push_str(&format!("({abs})*{mon}"));
            } else {
                out.push_str(&format!("{abs}*{mon}"));
            }
        }
        out
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        f.write_str(&self.display_with(&names))
    }
}

/// Variable names `z(k)_i` for `d` groups of `n` variables.
pub fn multilinear_names(n: usize, d: usize) -> Vec<String> {
    (0..d)
        .flat_map(|k| (0..n).map(move |i| format!("z{}_{}", k + 1, i + 1)))
        .collect()
}

/// Sends each word `x_{i1}...x_{id}` to `z(1)_{i1} ... z(d)_{id}`.
pub fn multilinearize<F: Field>(f: &NCPoly<F>, n: usize) -> Result<MultiPoly<F>, FreeAlgError> {
    if f.is_zero() {
        return Ok(MultiPoly::zero(0));
    }
    let d = f.degree().ok_or(FreeAlgError::Inhomogeneous)?;
    let mut out = MultiPoly::zero(d * n);
    for (w, c) in f.terms() {
        let mut e = vec![0; d * n];
        for (k, &l) in w.letters().iter().enumerate() {
            if l as usize >= n {
                return Err(FreeAlgError::GeneratorOutOfRange(l as usize + 1, n));
            }
            e[k * n + l as usize] = 1;
        }
        out.add_term(e, c);
    }
    Ok(out)
}

/// Evaluates the multilinearization of a homogeneous `f` of degree `d` on
/// `d` points whose coordinates are polynomials in a common ring.
///
/// Zero-degree terms are treated as constants.
pub fn evaluate_window<F: Field>(
    f: &NCPoly<F>,
    points: &[&[MultiPoly<F>]],
    nvars: usize,
) -> MultiPoly<F> {
    let mut out = MultiPoly::zero(nvars);
    for (w, c) in f.terms() {
        debug_assert!(w.len() <= points.len());
        let mut t = MultiPoly::constant(nvars, c.clone());
        for (k, &l) in w.letters().iter().enumerate() {
            t = t.mul(&points[k][l as usize]);
            if t.is_zero() {
                break;
            }
        }
        out = out.add(&t);
    }
    out
}

/// Evaluates on points with coordinates in the field itself.
pub fn evaluate_window_at<F: Field>(f: &NCPoly<F>, points: &[&[F]]) -> F {
    let mut acc = F::zero();
    for (w, c) in f.terms() {
        let mut t = c.clone();
        for (k, &l) in w.letters().iter().enumerate() {
            t = t.mul(&points[k][l as usize]);
            if t.is_zero() {
                break;
            }
        }
        acc = acc.add(&t);
    }
    acc
}
