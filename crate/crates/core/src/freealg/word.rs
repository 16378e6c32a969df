use std::cmp::Ordering;
use std::fmt;

/// A monomial of the free algebra: a sequence of 0-based generator indices.
///
/// The derived order is degree-first, then left-lexicographic on the
/// indices, i.e. the default monomial order with `x1 < x2 < ...`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i as u8])
    }

    pub fn from_letters(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&i| i as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + rhs.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&rhs.0);
        Word(v)
    }

    /// `prefix · self · suffix`
    pub fn wrap(&self, prefix: &[u8], suffix: &[u8]) -> Word {
        let mut v = Vec::with_capacity(prefix.len() + self.0.len() + suffix.len());
        v.extend_from_slice(prefix);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(suffix);
        Word(v)
    }

    pub fn map_letters(&self, f: impl Fn(u8) -> u8) -> Word {
        Word(self.0.iter().map(|&l| f(l)).collect())
    }

    /// Renders with generator names, collapsing runs into powers:
    /// `x1*x2^2`. The empty word renders as `1`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let name = names
                .get(l as usize)
                .cloned()
                .unwrap_or_else(|| format!("x{}", l + 1));
            if j - i == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|l| format!("x{}", l + 1)).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// Degree-first, then left-lexicographic order on a declared generator
/// precedence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    /// `rank[g]` is the position of generator `g` in the precedence, 0 smallest.
    rank: Vec<u8>,
}

impl MonomialOrder {
    /// Declaration order: generator 0 is smallest.
    pub fn natural(n: usize) -> Self {
        MonomialOrder {
            rank: (0..n as u8).collect(),
        }
    }

    /// `precedence` lists generator indices from smallest to largest.
    pub fn from_precedence(precedence: &[usize]) -> Option<Self> {
        let n = precedence.len();
        let mut rank = vec![u8::MAX; n];
        for (pos, &g) in precedence.iter().enumerate() {
            if g >= n || rank[g] != u8::MAX {
                return None;
            }
            rank[g] = pos as u8;
        }
        Some(MonomialOrder { rank })
    }

    pub fn n(&self) -> usize {
        self.rank.len()
    }

    pub fn rank(&self, g: u8) -> u8 {
        self.rank[g as usize]
    }

    pub fn is_natural(&self) -> bool {
        self.rank.iter().enumerate().all(|(i, &r)| i == r as usize)
    }

    /// Generator indices from smallest to largest.
    pub fn precedence(&self) -> Vec<usize> {
        let mut p = vec![0; self.rank.len()];
        for (g, &r) in self.rank.iter().enumerate() {
            p[r as usize] = g;
        }
        p
    }

    pub fn compare(&self, u: &Word, v: &Word) -> Ordering {
        u.len().cmp(&v.len()).then_with(|| {
            for (a, b) in u.0.iter().zip(&v.0) {
                match self.rank(*a).cmp(&self.rank(*b)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Relabels letters so that the derived `Word` order agrees with `self`.
    pub(crate) fn to_rank_space(&self, w: &Word) -> Word {
        w.map_letters(|l| self.rank[l as usize])
    }

    pub(crate) fn from_rank_space(&self, w: &Word) -> Word {
        let prec = self.precedence();
        w.map_letters(|r| prec[r as usize] as u8)
    }
}

/// Compares two words under `order`.
pub fn word_compare(u: &Word, v: &Word, order: &MonomialOrder) -> Ordering {
    order.compare(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[usize]) -> Word {
        Word::from_letters(l)
    }

    #[test]
    fn spec_examples() {
        let o = MonomialOrder::natural(2);
        assert_eq!(
            word_compare(&w(&[1, 0]), &w(&[0, 1]), &o),
            Ordering::Greater
        );
        assert_eq!(word_compare(&w(&[0]), &w(&[0, 0]), &o), Ordering::Less);
        assert_eq!(word_compare(&w(&[1, 0]), &w(&[1, 0]), &o), Ordering::Equal);
    }

    #[test]
    fn reversed_precedence() {
        let o = MonomialOrder::from_precedence(&[1, 0]).unwrap();
        assert_eq!(o.compare(&w(&[1, 0]), &w(&[0, 1])), Ordering::Less);
        let r = o.to_rank_space(&w(&[1, 0, 0]));
        assert_eq!(o.from_rank_space(&r), w(&[1, 0, 0]));
        assert!(MonomialOrder::from_precedence(&[0, 0]).is_none());
    }

    #[test]
    fn rendering() {
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        assert_eq!(w(&[0, 0, 1]).display_with(&names), "x^2*y");
        assert_eq!(Word::empty().display_with(&names), "1");
    }
}
