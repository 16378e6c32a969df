//! Point conditions, parametric point-module families, annihilation and
//! finite-field witness search.
//!
//! A sequence of points `p_0, p_1, ...` in `P^{n-1}` is checked against a
//! homogeneous element `f` of degree `d` by evaluating the multilinearized
//! form of `f` on every window `p_s, ..., p_{s+d-1}`. Relations and sequence
//! elements are treated alike, so the windows give truncated point modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coeff::{rational_reconstruct, DensePoly, Field, Rational};
use crate::freealg::{evaluate_window, evaluate_window_at, multilinearize, MultiPoly, NCPoly};
use crate::rewrite::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("relation {0} is not quadratic")]
    NotQuadratic(usize),
    #[error("a family needs at least one point")]
    EmptyFamily,
    #[error("point {slot} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        slot: usize,
        expected: usize,
        got: usize,
    },
    #[error("point {0} is identically zero")]
    ZeroPoint(usize),
    #[error("coordinates of point {0} are not homogeneous of a common degree")]
    InhomogeneousPoint(usize),
    #[error("family coordinates must be polynomials in two parameters")]
    BadParameters,
}

/// One bilinear form per relation, in the variables `z{k}_{i}`.
pub fn point_conditions<F: Field>(p: &Presentation<F>) -> Result<Vec<MultiPoly<F>>, GeometryError> {
    p.relations()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            if r.degree() != Some(2) {
                return Err(GeometryError::NotQuadratic(i + 1));
            }
            multilinearize(r, p.n()).map_err(|_| GeometryError::NotQuadratic(i + 1))
        })
        .collect()
}

/// A periodic sequence of points whose coordinates are binary forms in the
/// parameters `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricPointFamily<F: Field> {
    points: Vec<Vec<MultiPoly<F>>>,
}

impl<F: Field> ParametricPointFamily<F> {
    pub fn new(points: Vec<Vec<MultiPoly<F>>>) -> Result<Self, GeometryError> {
        let n = points.first().ok_or(GeometryError::EmptyFamily)?.len();
        for (slot, pt) in points.iter().enumerate() {
            if pt.len() != n {
                return Err(GeometryError::DimensionMismatch {
                    slot: slot + 1,
                    expected: n,
                    got: pt.len(),
                });
            }
            if pt.iter().any(|c| c.nvars() != 2 && !c.is_zero()) {
                return Err(GeometryError::BadParameters);
            }
            let mut degs = pt
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| (c.is_homogeneous(), c.total_degree()));
            let Some(first) = degs.next() else {
                return Err(GeometryError::ZeroPoint(slot + 1));
            };
            if !first.0 || degs.any(|d| d != first) {
                return Err(GeometryError::InhomogeneousPoint(slot + 1));
            }
        }
        let points = points
            .into_iter()
            .map(|pt| {
                pt.into_iter()
                    .map(|c| if c.is_zero() { MultiPoly::zero(2) } else { c })
                    .collect()
            })
            .collect();
        Ok(ParametricPointFamily { points })
    }

    pub fn period(&self) -> usize {
        self.points.len()
    }

    pub fn n(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<MultiPoly<F>>] {
        &self.points
    }

    /// Multiplies every coordinate of point `slot` by `factor`.
    pub fn rescaled(&self, slot: usize, factor: &MultiPoly<F>) -> Self {
        let mut out = self.clone();
        for c in &mut out.points[slot] {
            *c = c.mul(factor);
        }
        out
    }

    /// Value of `f` on the window of length `deg f` starting at `start`.
    fn window(&self, f: &NCPoly<F>, start: usize) -> MultiPoly<F> {
        let d = f.max_degree();
        let pts: Vec<&[MultiPoly<F>]> = (0..d)
            .map(|t| &self.points[(start + t) % self.period()][..])
            .collect();
        evaluate_window(f, &pts, 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyFailure<F: Field> {
    /// 1-based index of the relation.
    pub relation: usize,
    /// Starting slot of the window.
    pub window: usize,
    pub residue: MultiPoly<F>,
}

/// Checks every cyclic window against every relation; returns the first
/// failure.
pub fn verify_family<F: Field>(
    fam: &ParametricPointFamily<F>,
    p: &Presentation<F>,
) -> Result<Option<FamilyFailure<F>>, GeometryError> {
    if fam.n() != p.n() {
        return Err(GeometryError::DimensionMismatch {
            slot: 1,
            expected: p.n(),
            got: fam.n(),
        });
    }
    for (i, r) in p.relations().iter().enumerate() {
        for s in 0..fam.period() {
            let residue = fam.window(r, s);
            if !residue.is_zero() {
                return Ok(Some(FamilyFailure {
                    relation: i + 1,
                    window: s,
                    residue,
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Annihilation<F: Field> {
    /// Every window value vanishes identically.
    Identically,
    /// The window values have no common zero on `P^1`.
    Nowhere,
    /// Common zeros are the zeros of this binary form.
    OnSubfamily(MultiPoly<F>),
}

/// Evaluates each element of `fs` on `windows` consecutive cyclic windows
/// (default `period * max degree`) and decides whether the resulting binary
/// forms share a zero.
pub fn annihilates<F: Field>(
    fam: &ParametricPointFamily<F>,
    fs: &[NCPoly<F>],
    windows: Option<usize>,
) -> Annihilation<F> {
    let maxdeg = fs.iter().map(NCPoly::max_degree).max().unwrap_or(0);
    let l = windows.unwrap_or(fam.period() * maxdeg.max(1));
    let mut forms = Vec::new();
    for f in fs.iter().filter(|f| !f.is_zero()) {
        for s in 0..l {
            let v = fam.window(f, s);
            if !v.is_zero() {
                forms.push(v);
            }
        }
    }
    if forms.is_empty() {
        return Annihilation::Identically;
    }
    // parameters where some point of the family is the zero vector are not
    // points at all
    let mut g = binary_gcd(&forms);
    for pt in &fam.points {
        let coords: Vec<MultiPoly<F>> = pt.iter().filter(|c| !c.is_zero()).cloned().collect();
        if !coords.is_empty() {
            g = strip_factors(&g, &binary_gcd(&coords));
        }
    }
    if g.total_degree() == Some(0) {
        Annihilation::Nowhere
    } else {
        Annihilation::OnSubfamily(g)
    }
}

/// Splits a binary form into its power of `b` and its dehomogenization
/// `f(a, 1)`.
fn binary_parts<F: Field>(f: &MultiPoly<F>) -> (u32, DensePoly<F>) {
    let mut coeffs: Vec<F> = Vec::new();
    let mut e = u32::MAX;
    for (exps, c) in f.terms() {
        let (i, j) = (exps[0] as usize, exps[1]);
        e = e.min(j);
        if coeffs.len() <= i {
            coeffs.resize(i + 1, F::zero());
        }
        coeffs[i] = coeffs[i].add(c);
    }
    (e, DensePoly::new(coeffs))
}

fn binary_join<F: Field>(b_power: u32, g: &DensePoly<F>) -> MultiPoly<F> {
    let dg = g.degree().unwrap_or(0) as u32;
    let mut out = MultiPoly::zero(2);
    for (i, c) in g.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.add_term(vec![i as u32, dg - i as u32 + b_power], c);
        }
    }
    out
}

/// Greatest common divisor of nonzero binary forms in `(a, b)`, monic in the
/// highest power of `a`.
pub fn binary_gcd<F: Field>(forms: &[MultiPoly<F>]) -> MultiPoly<F> {
    let mut b_power = u32::MAX;
    let mut g: Option<DensePoly<F>> = None;
    for f in forms {
        let (e, u) = binary_parts(f);
        b_power = b_power.min(e);
        g = Some(match g {
            None => u.monic(),
            Some(g) => g.gcd(&u),
        });
    }
    binary_join(b_power, &g.expect("at least one form"))
}

/// Removes from `g` every linear factor it shares with `h`.
fn strip_factors<F: Field>(g: &MultiPoly<F>, h: &MultiPoly<F>) -> MultiPoly<F> {
    let (mut gb, mut ga) = binary_parts(g);
    let (hb, ha) = binary_parts(h);
    if hb > 0 {
        gb = 0;
    }
    loop {
        let c = ga.gcd(&ha);
        if c.degree().unwrap_or(0) == 0 {
            break;
        }
        ga = ga.div_rem(&c).expect("nonzero divisor").0;
    }
    binary_join(gb, &ga.monic())
}

/// Finite window of exact points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSequence<F: Field> {
    pub points: Vec<Vec<F>>,
}

impl<F: Field> PointSequence<F> {
    /// True when every window of every element of `conds` vanishes exactly.
    pub fn satisfies(&self, conds: &[NCPoly<F>]) -> bool {
        conds.iter().filter(|f| !f.is_zero()).all(|f| {
            let d = f.max_degree();
            (0..=self.points.len().saturating_sub(d)).all(|s| {
                if s + d > self.points.len() {
                    return true;
                }
                let pts: Vec<&[F]> = self.points[s..s + d].iter().map(Vec::as_slice).collect();
                evaluate_window_at(f, &pts).is_zero()
            })
        })
    }
}

/// Settings of the finite-field probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeOptions {
    pub primes: Vec<u64>,
    /// Random starting points per prime, after the small-entry points.
    pub trials: usize,
    pub seed: u64,
    /// Image of the parameter `q` in every prime field.
    pub q_image: u64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            primes: vec![10007, 10009, 10037],
            trials: 64,
            seed: 0,
            q_image: 3,
        }
    }
}

/// Searches for a window of `length` points (default `max deg F + 1`)
/// satisfying every relation of `p` and every element of `fs` on all
/// windows. Only witnesses verified over the exact field are returned;
/// `None` is not a proof of absence.
pub fn search_annihilated_point<F: Field>(
    p: &Presentation<F>,
    fs: &[NCPoly<F>],
    length: Option<usize>,
    opts: &ProbeOptions,
) -> Option<PointSequence<F>> {
    let n = p.n();
    let conds: Vec<NCPoly<F>> = p
        .relations()
        .iter()
        .chain(fs.iter())
        .filter(|f| !f.is_zero())
        .cloned()
        .collect();
    let maxdeg = fs.iter().map(NCPoly::max_degree).max().unwrap_or(0);
    let length = length.unwrap_or(maxdeg.max(1) + 1).max(1);
    let mut primes = opts.primes.clone();
    primes.sort_unstable();
    for &prime in &primes {
        let Some(modular) = reduce_conditions(&conds, prime, opts.q_image) else {
            continue;
        };
        let mut probe = Probe {
            n,
            prime,
            conds: &modular,
            length,
            rng: ChaCha8Rng::seed_from_u64(opts.seed ^ prime.wrapping_mul(0x9e37_79b9_7f4a_7c15)),
            budget: 0,
        };
        let mut starts = small_points(n, prime);
        for _ in 0..opts.trials {
            let v: Vec<u64> = (0..n).map(|_| probe.rng.random_range(0..prime)).collect();
            if let Some(v) = normalize(v, prime) {
                starts.push(v);
            }
        }
        for start in starts {
            probe.budget = NODE_BUDGET;
            if !probe.admissible(&[], &start) {
                continue;
            }
            let mut seq = vec![start];
            if probe.extend(&mut seq) {
                if let Some(exact) = lift(&seq, prime) {
                    let cand = PointSequence { points: exact };
                    if cand.satisfies(&conds) {
                        return Some(cand);
                    }
                }
            }
        }
    }
    None
}

const NODE_BUDGET: usize = 256;

/// `(letters, coefficient)` pairs of a polynomial reduced mod `p`.
type ModPoly = Vec<(Vec<u8>, u64)>;

fn reduce_conditions<F: Field>(conds: &[NCPoly<F>], p: u64, q: u64) -> Option<Vec<ModPoly>> {
    conds
        .iter()
        .map(|f| {
            f.terms()
                .map(|(w, c)| Some((w.letters().to_vec(), c.mod_p(p, q)?)))
                .collect::<Option<ModPoly>>()
        })
        .collect()
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    crate::coeff::inv_mod(a, p).expect("nonzero residue")
}

/// Scales so that the first nonzero coordinate is 1.
fn normalize(mut v: Vec<u64>, p: u64) -> Option<Vec<u64>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = invmod(lead, p);
    for x in &mut v {
        *x = mulmod(*x, inv, p);
    }
    Some(v)
}

/// Projective points with entries in `{0, 1, -1}`, by support size.
fn small_points(n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for support in 1..=n.min(4) {
        let mut v = vec![0u8; n];
        collect_small(&mut v, 0, support, &mut out, p);
    }
    out
}

fn collect_small(v: &mut Vec<u8>, pos: usize, left: usize, out: &mut Vec<Vec<u64>>, p: u64) {
    if left == 0 {
        if v.iter().any(|&x| x != 0) {
            out.push(
                v.iter()
                    .map(|&x| match x {
                        0 => 0,
                        1 => 1,
                        _ => p - 1,
                    })
                    .collect(),
            );
        }
        return;
    }
    if pos == v.len() || v.len() - pos < left {
        return;
    }
    let first = v[..pos].iter().all(|&x| x == 0);
    let choices: &[u8] = if first { &[1] } else { &[1, 2] };
    for &c in choices {
        v[pos] = c;
        collect_small(v, pos + 1, left - 1, out, p);
    }
    v[pos] = 0;
    collect_small(v, pos + 1, left, out, p);
}

/// Dense nullspace basis mod `p`.
fn nullspace_mod(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = invmod(m[r][c], p);
        for x in &mut m[r] {
            *x = mulmod(*x, inv, p);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let t = mulmod(m[r][j], f, p);
                    m[i][j] = (m[i][j] + p - t) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[i][f]) % p;
            }
            v
        })
        .collect()
}

struct Probe<'a> {
    n: usize,
    prime: u64,
    conds: &'a [ModPoly],
    length: usize,
    rng: ChaCha8Rng,
    budget: usize,
}

impl Probe<'_> {
    /// Linear conditions on the point appended after `seq`.
    fn rows(&self, seq: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let p = self.prime;
        let t = seq.len();
        let mut rows = Vec::new();
        for f in self.conds {
            let Some(d) = f.first().map(|(w, _)| w.len()) else {
                continue;
            };
            if d == 0 || d > t + 1 {
                continue;
            }
            let s = t + 1 - d;
            let mut row = vec![0u64; self.n];
            for (w, c) in f {
                let mut coef = *c;
                for (k, &l) in w[..d - 1].iter().enumerate() {
                    coef = mulmod(coef, seq[s + k][l as usize], p);
                    if coef == 0 {
                        break;
                    }
                }
                let last = w[d - 1] as usize;
                row[last] = (row[last] + coef) % p;
            }
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
        rows
    }

    fn admissible(&self, seq: &[Vec<u64>], v: &[u64]) -> bool {
        let p = self.prime;
        self.rows(seq).iter().all(|r| {
            r.iter()
                .zip(v)
                .fold(0, |a, (x, y)| (a + mulmod(*x, *y, p)) % p)
                == 0
        })
    }

    fn extend(&mut self, seq: &mut Vec<Vec<u64>>) -> bool {
        if seq.len() >= self.length {
            return true;
        }
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        let p = self.prime;
        let basis = nullspace_mod(self.rows(seq), self.n, p);
        if basis.is_empty() {
            return false;
        }
        let mut cands: Vec<Vec<u64>> = Vec::new();
        // repeat earlier points first, favouring periodic sequences
        for back in 1..=2.min(seq.len()) {
            let prev = seq[seq.len() - back].clone();
            if self.admissible(seq, &prev) {
                cands.push(prev);
            }
        }
        cands.extend(basis.iter().filter_map(|v| normalize(v.clone(), p)));
        if basis.len() > 1 {
            for _ in 0..2 {
                let mut v = vec![0u64; self.n];
                for b in &basis {
                    let c = self.rng.random_range(1..p);
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = (*x + mulmod(c, *y, p)) % p;
                    }
                }
                cands.extend(normalize(v, p));
            }
        }
        let mut seen: Vec<Vec<u64>> = Vec::new();
        for c in cands {
            if seen.contains(&c) {
                continue;
            }
            seen.push(c.clone());
            seq.push(c);
            if self.extend(seq) {
                return true;
            }
            seq.pop();
        }
        false
    }
}

fn lift<F: Field>(seq: &[Vec<u64>], p: u64) -> Option<Vec<Vec<F>>> {
    seq.iter()
        .map(|pt| {
            pt.iter()
                .map(|&x| {
                    let (num, den) = rational_reconstruct(x, p)?;
                    Some(F::from_rational(&Rational::new(num, den)?))
                })
                .collect()
        })
        .collect()
}
