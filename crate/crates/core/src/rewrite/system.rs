use std::collections::{BTreeMap, HashMap};

use super::{Presentation, RewriteError};
use crate::coeff::Field;
use crate::freealg::{MonomialOrder, NCPoly, Word};
use crate::linalg::Echelon;

/// A rewrite rule `lead -> tail`; every word of `tail` is smaller than
/// `lead`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule<F: Field> {
    pub lead: Word,
    pub tail: NCPoly<F>,
}

/// An interreduced, degree-truncated Gröbner basis.
///
/// Internally words are relabelled so that the derived [`Word`] order is
/// the requested monomial order; the public accessors translate back.
#[derive(Clone, Debug)]
pub struct RewriteSystem<F: Field> {
    names: Vec<String>,
    order: MonomialOrder,
    truncation: usize,
    certified: bool,
    rules: Vec<(Word, NCPoly<F>)>,
    index: HashMap<Vec<u8>, usize>,
    lengths: Vec<usize>,
}

impl<F: Field> RewriteSystem<F> {
    fn empty(names: Vec<String>, order: MonomialOrder, truncation: usize) -> Self {
        RewriteSystem {
            names,
            order,
            truncation,
            certified: false,
            rules: Vec::new(),
            index: HashMap::new(),
            lengths: Vec::new(),
        }
    }

    fn push_rule(&mut self, lead: Word, tail: NCPoly<F>) {
        let len = lead.len();
        self.index.insert(lead.0.clone(), self.rules.len());
        self.rules.push((lead, tail));
        if !self.lengths.contains(&len) {
            self.lengths.push(len);
            self.lengths.sort_unstable();
        }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn num_rules(&self) -> usize {
        self.rules.len()
    }

    /// Longest leading word, 0 when there are no rules.
    pub fn max_rule_degree(&self) -> usize {
        self.lengths.last().copied().unwrap_or(0)
    }

    /// Rules in the original alphabet, ordered by degree then leading word.
    pub fn rules(&self) -> Vec<Rule<F>> {
        self.rules
            .iter()
            .map(|(l, t)| Rule {
                lead: self.order.from_rank_space(l),
                tail: t.map_words(|w| self.order.from_rank_space(w)),
            })
            .collect()
    }

    /// Rules rendered as `lead -> tail`.
    pub fn display_rules(&self) -> Vec<String> {
        self.rules()
            .iter()
            .map(|r| {
                format!(
                    "{} -> {}",
                    r.lead.display_with(&self.names),
                    r.tail.display_with(&self.names, &self.order)
                )
            })
            .collect()
    }

    /// First leading-word occurrence (leftmost, shortest rule first).
    fn find_factor(&self, w: &[u8]) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for &len in &self.lengths {
                if pos + len > w.len() {
                    break;
                }
                if let Some(&ri) = self.index.get(&w[pos..pos + len]) {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    /// Whether a rank-space word ending in its last letter has a leading
    /// word as a suffix.
    pub(crate) fn suffix_reducible(&self, w: &[u8]) -> bool {
        self.lengths
            .iter()
            .any(|&len| len <= w.len() && self.index.contains_key(&w[w.len() - len..]))
    }

    pub(crate) fn reduce_map(&self, mut work: BTreeMap<Word, F>) -> BTreeMap<Word, F> {
        let mut done = BTreeMap::new();
        while let Some((w, c)) = work.pop_last() {
            match self.find_factor(&w.0) {
                None => {
                    done.insert(w, c);
                }
                Some((pos, ri)) => {
                    let (lead, tail) = &self.rules[ri];
                    let pre = &w.0[..pos];
                    let suf = &w.0[pos + lead.len()..];
                    for (tw, tc) in tail.terms() {
                        let nw = tw.wrap(pre, suf);
                        let add = c.mul(tc);
                        match work.get_mut(&nw) {
                            Some(cur) => {
                                let s = cur.add(&add);
                                if s.is_zero() {
                                    work.remove(&nw);
                                } else {
                                    *cur = s;
                                }
                            }
                            None => {
                                work.insert(nw, add);
                            }
                        }
                    }
                }
            }
        }
        done
    }

    pub(crate) fn to_rank(&self, f: &NCPoly<F>) -> NCPoly<F> {
        if self.order.is_natural() {
            f.clone()
        } else {
            f.map_words(|w| self.order.to_rank_space(w))
        }
    }

    pub(crate) fn from_rank(&self, f: NCPoly<F>) -> NCPoly<F> {
        if self.order.is_natural() {
            f
        } else {
            f.map_words(|w| self.order.from_rank_space(w))
        }
    }

    fn check_degree(&self, f: &NCPoly<F>) -> Result<(), RewriteError> {
        let degree = f.max_degree();
        if !self.certified && degree > self.truncation {
            return Err(RewriteError::DegreeExceedsTruncation {
                degree,
                truncation: self.truncation,
            });
        }
        Ok(())
    }

    /// Normal form: no term contains a leading word as a factor.
    pub fn normal_form(&self, f: &NCPoly<F>) -> Result<NCPoly<F>, RewriteError> {
        self.check_degree(f)?;
        let r = self.reduce_map(self.to_rank(f).into_map());
        Ok(self.from_rank(NCPoly::from_map(r)))
    }

    /// Normal form of `a * b`.
    pub fn multiply(&self, a: &NCPoly<F>, b: &NCPoly<F>) -> Result<NCPoly<F>, RewriteError> {
        self.normal_form(&a.mul(b))
    }

    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.find_factor(&self.order.to_rank_space(w).0).is_none()
    }

    /// Normal words of length `m`, in descending monomial order.
    pub fn normal_words(&self, m: usize) -> Vec<Word> {
        let mut level = vec![Word::empty()];
        for _ in 0..m {
            let mut next = Vec::new();
            for w in &level {
                for b in 0..self.n() as u8 {
                    let mut v = w.0.clone();
                    v.push(b);
                    if !self.suffix_reducible(&v) {
                        next.push(Word(v));
                    }
                }
            }
            level = next;
        }
        level.sort_unstable_by(|a, b| b.cmp(a));
        level
            .iter()
            .map(|w| self.order.from_rank_space(w))
            .collect()
    }
}

/// Normal form of `f` with respect to `rs`.
pub fn normal_form<F: Field>(
    f: &NCPoly<F>,
    rs: &RewriteSystem<F>,
) -> Result<NCPoly<F>, RewriteError> {
    rs.normal_form(f)
}

/// Homogeneous Buchberger completion, processed one degree at a time up to
/// `degree`.
///
/// At each degree the relations of that degree and every overlap ambiguity
/// among existing rules are reduced, then row-reduced together; the pivots
/// become the new rules. The result is interreduced by construction and
/// computes exact normal forms in every degree up to the truncation.
pub fn complete_truncated<F: Field>(
    p: &Presentation<F>,
    degree: usize,
    order: &MonomialOrder,
) -> Result<RewriteSystem<F>, RewriteError> {
    let needed = p.max_degree();
    if degree < needed {
        return Err(RewriteError::TruncationTooLow { degree, needed });
    }
    assert_eq!(
        order.n(),
        p.n(),
        "monomial order size must match generator count"
    );
    let mut sys = RewriteSystem::empty(p.names().to_vec(), order.clone(), degree);
    let mut by_degree: BTreeMap<usize, Vec<NCPoly<F>>> = BTreeMap::new();
    for r in p.relations() {
        let r = sys.to_rank(r);
        by_degree.entry(r.max_degree()).or_default().push(r);
    }
    for m in 1..=degree {
        let mut cands: Vec<NCPoly<F>> = by_degree.remove(&m).unwrap_or_default();
        let rules = &sys.rules;
        for (l1, t1) in rules {
            for (l2, t2) in rules {
                let (a, b) = (l1.len(), l2.len());
                if a + b <= m {
                    continue;
                }
                let o = a + b - m;
                if o >= a || o >= b {
                    continue;
                }
                if l1.0[a - o..] == l2.0[..o] {
                    let left = t1.wrap(&[], &l2.0[o..]);
                    let right = t2.wrap(&l1.0[..a - o], &[]);
                    cands.push(left.sub(&right));
                }
            }
        }
        let mut ech: Echelon<Word, F> = Echelon::new();
        for c in cands {
            let r = sys.reduce_map(c.into_map());
            if !r.is_empty() {
                ech.insert(r, None);
            }
        }
        for (lead, mut row) in ech.into_rows() {
            row.remove(&lead);
            let tail = NCPoly::from_map(row).neg();
            sys.push_rule(lead, tail);
        }
    }
    let g = sys.max_rule_degree();
    sys.certified = g == 0 || 2 * g - 1 <= degree;
    Ok(sys)
}
