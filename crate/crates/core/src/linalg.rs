//! Exact row reduction.

use std::collections::BTreeMap;

use crate::coeff::Field;

/// Incremental reduced row echelon form over sparse rows with ordered
/// column keys. The pivot of a row is its largest key.
///
/// Each inserted row may carry a tag; the eliminator tracks which
/// combination of tagged rows produced every pivot, so a row that reduces
/// to zero yields a dependency among the tagged inputs.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone, F: Field> {
    pivots: BTreeMap<K, Pivot<K, F>>,
}

#[derive(Clone, Debug)]
struct Pivot<K: Ord + Clone, F: Field> {
    row: BTreeMap<K, F>,
    combo: BTreeMap<usize, F>,
}

pub enum Inserted<K, F> {
    /// New pivot at this key.
    Pivot(K),
    /// The row lay in the span; the map is a nontrivial combination of tags
    /// that vanishes (includes the new row's own tag when it had one).
    Dependent(BTreeMap<usize, F>),
}

fn axpy<K: Ord + Clone, F: Field>(dst: &mut BTreeMap<K, F>, c: &F, src: &BTreeMap<K, F>) {
    for (k, v) in src {
        let add = c.mul(v);
        match dst.get_mut(k) {
            Some(cur) => {
                let s = cur.add(&add);
                if s.is_zero() {
                    dst.remove(k);
                } else {
                    *cur = s;
                }
            }
            None => {
                if !add.is_zero() {
                    dst.insert(k.clone(), add);
                }
            }
        }
    }
}

impl<K: Ord + Clone, F: Field> Default for Echelon<K, F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone, F: Field> Echelon<K, F> {
    pub fn new() -> Self {
        Echelon {
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots without inserting it.
    pub fn reduce(&self, row: &BTreeMap<K, F>) -> BTreeMap<K, F> {
        let mut r = row.clone();
        let keys: Vec<K> = r
            .keys()
            .filter(|k| self.pivots.contains_key(*k))
            .cloned()
            .collect();
        for k in keys {
            if let Some(c) = r.get(&k).cloned() {
                axpy(&mut r, &c.neg(), &self.pivots[&k].row);
            }
        }
        r
    }

    pub fn contains(&self, row: &BTreeMap<K, F>) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn insert(&mut self, row: BTreeMap<K, F>, tag: Option<usize>) -> Inserted<K, F> {
        let mut r = row;
        let mut combo = BTreeMap::new();
        if let Some(t) = tag {
            combo.insert(t, F::one());
        }
        let keys: Vec<K> = r
            .keys()
            .filter(|k| self.pivots.contains_key(*k))
            .cloned()
            .collect();
        for k in keys {
            if let Some(c) = r.get(&k).cloned() {
                let p = &self.pivots[&k];
                let mc = c.neg();
                axpy(&mut r, &mc, &p.row);
                axpy(&mut combo, &mc, &p.combo);
            }
        }
        let Some((lead, lc)) = r.last_key_value().map(|(k, v)| (k.clone(), v.clone())) else {
            return Inserted::Dependent(combo);
        };
        let inv = lc.inv().expect("nonzero leading coefficient");
        for v in r.values_mut() {
            *v = v.mul(&inv);
        }
        for v in combo.values_mut() {
            *v = v.mul(&inv);
        }
        // keep the form reduced: clear the new pivot column elsewhere
        for p in self.pivots.values_mut() {
            if let Some(c) = p.row.get(&lead).cloned() {
                let mc = c.neg();
                axpy(&mut p.row, &mc, &r);
                axpy(&mut p.combo, &mc, &combo);
            }
        }
        self.pivots.insert(lead.clone(), Pivot { row: r, combo });
        Inserted::Pivot(lead)
    }

    /// Pivot rows in ascending key order, each monic at its pivot.
    pub fn rows(&self) -> impl Iterator<Item = (&K, &BTreeMap<K, F>)> {
        self.pivots.iter().map(|(k, p)| (k, &p.row))
    }

    pub fn into_rows(self) -> impl Iterator<Item = (K, BTreeMap<K, F>)> {
        self.pivots.into_iter().map(|(k, p)| (k, p.row))
    }
}

/// Dense reduced row echelon form. Returns the pivot column of each
/// nonzero row, in order.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for v in m[r].iter_mut() {
            *v = v.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = m[r][j].mul(&f);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{v : M v = 0}` for a dense `rows x cols` matrix.
pub fn nullspace<F: Field>(m: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = a[i][f].neg();
            }
            v
        })
        .collect()
}
