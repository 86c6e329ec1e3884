//! Posets made of a backbone chain plus classes of interchangeable elements.
//!
//! Every non-backbone element sits strictly between two backbone vertices and
//! is incomparable with all other non-backbone elements. All posets arising
//! from markings (subdivided edges, alpha- and beta-vertices) have this shape.
//! A linear extension then amounts to choosing a gap for each element and an
//! order inside each gap, and counting up to permutations inside classes gives
//! a sum of products of multinomials.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::seq::factorial;

/// What a class of interchangeable elements stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLabel {
    /// Midpoints of parallel edges src -> tgt of the given weight.
    Edge { src: usize, tgt: usize, weight: u32 },
    /// beta-vertices (or beta-edge midpoints) of the given weight attached at `src`.
    Beta { src: usize, weight: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetClass {
    /// Backbone index below every element of the class.
    pub lo: usize,
    /// Backbone index above every element of the class.
    pub hi: usize,
    pub size: u64,
    pub label: ClassLabel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PosetElement {
    Backbone(usize),
    /// A short-edge midpoint in the given gap.
    Fixed(usize),
    /// A member of the class with this index.
    Member(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkingPoset {
    backbone: usize,
    fixed: Vec<u64>,
    classes: Vec<PosetClass>,
}

impl MarkingPoset {
    /// A chain of `backbone` vertices (indices 0..backbone) with nothing else.
    pub fn new(backbone: usize) -> Self {
        assert!(backbone >= 1);
        Self {
            backbone,
            fixed: alloc::vec![0; backbone - 1],
            classes: Vec::new(),
        }
    }

    pub fn backbone_len(&self) -> usize {
        self.backbone
    }

    pub fn classes(&self) -> &[PosetClass] {
        &self.classes
    }

    /// Fixed (short-edge) elements per gap; gap g lies between backbone g and g + 1.
    pub fn fixed(&self) -> &[u64] {
        &self.fixed
    }

    /// Adds `n` mutually interchangeable elements confined to gap `gap`.
    pub fn add_fixed(&mut self, gap: usize, n: u64) {
        self.fixed[gap] += n;
    }

    /// Adds a class, merging with an existing class of the same label.
    pub fn add_class(&mut self, lo: usize, hi: usize, size: u64, label: ClassLabel) {
        assert!(lo < hi && hi < self.backbone, "class interval out of range");
        if size == 0 {
            return;
        }
        if let Some(c) = self.classes.iter_mut().find(|c| c.label == label) {
            assert!(c.lo == lo && c.hi == hi);
            c.size += size;
        } else {
            self.classes.push(PosetClass { lo, hi, size, label });
        }
    }

    pub fn element_count(&self) -> u64 {
        self.backbone as u64
            + self.fixed.iter().sum::<u64>()
            + self.classes.iter().map(|c| c.size).sum::<u64>()
    }

    /// Number of linear extensions up to permutations within classes.
    pub fn count_extensions(&self) -> BigUint {
        let max_n = self.element_count();
        let facts: Vec<BigUint> = {
            let mut v = Vec::with_capacity(max_n as usize + 1);
            let mut acc = BigUint::one();
            v.push(acc.clone());
            for i in 1..=max_n {
                acc *= i;
                v.push(acc.clone());
            }
            v
        };
        let mut states: BTreeMap<Vec<u64>, BigUint> = BTreeMap::new();
        states.insert(self.classes.iter().map(|c| c.size).collect(), BigUint::one());
        for g in 0..self.backbone - 1 {
            let active: Vec<usize> = (0..self.classes.len())
                .filter(|&x| self.classes[x].lo <= g && g < self.classes[x].hi)
                .collect();
            let mut next: BTreeMap<Vec<u64>, BigUint> = BTreeMap::new();
            for (rem, weight) in &states {
                let mut choice = alloc::vec![0u64; active.len()];
                self.distribute(g, &active, 0, rem, &mut choice, &facts, weight, &mut next);
            }
            states = next;
        }
        let mut total = BigUint::zero();
        for (rem, w) in states {
            debug_assert!(rem.iter().all(|&r| r == 0));
            total += w;
        }
        total
    }

    #[allow(clippy::too_many_arguments)]
    fn distribute(
        &self,
        g: usize,
        active: &[usize],
        pos: usize,
        rem: &[u64],
        choice: &mut Vec<u64>,
        facts: &[BigUint],
        weight: &BigUint,
        out: &mut BTreeMap<Vec<u64>, BigUint>,
    ) {
        if pos == active.len() {
            let mut n = self.fixed[g];
            let mut denom = facts[self.fixed[g] as usize].clone();
            let mut key = rem.to_vec();
            for (i, &x) in active.iter().enumerate() {
                n += choice[i];
                denom *= &facts[choice[i] as usize];
                key[x] -= choice[i];
            }
            let w = weight * (&facts[n as usize] / denom);
            *out.entry(key).or_default() += w;
            return;
        }
        let x = active[pos];
        let r = rem[x];
        // the last gap of a class must take everything left
        let range = if self.classes[x].hi == g + 1 { r..=r } else { 0..=r };
        for c in range {
            choice[pos] = c;
            self.distribute(g, active, pos + 1, rem, choice, facts, weight, out);
        }
    }

    /// One linear extension: every class member placed in its lowest gap.
    pub fn representative(&self) -> Vec<PosetElement> {
        let mut out = Vec::new();
        for b in 0..self.backbone {
            out.push(PosetElement::Backbone(b));
            if b + 1 == self.backbone {
                break;
            }
            for _ in 0..self.fixed[b] {
                out.push(PosetElement::Fixed(b));
            }
            for (x, c) in self.classes.iter().enumerate() {
                if c.lo == b {
                    for _ in 0..c.size {
                        out.push(PosetElement::Member(x));
                    }
                }
            }
        }
        out
    }
}

/// Brute-force count for small posets: all placements and orders, divided by
/// class symmetries. Used as an oracle in tests.
pub fn count_extensions_naive(p: &MarkingPoset) -> BigUint {
    // expand into individual elements with their gap ranges
    let mut elems: Vec<(usize, usize)> = Vec::new();
    for (g, &n) in p.fixed.iter().enumerate() {
        for _ in 0..n {
            elems.push((g, g + 1));
        }
    }
    for c in &p.classes {
        for _ in 0..c.size {
            elems.push((c.lo, c.hi));
        }
    }
    let mut per_gap = alloc::vec![0u64; p.backbone - 1];
    let mut raw = BigUint::zero();
    fn rec(elems: &[(usize, usize)], i: usize, per_gap: &mut Vec<u64>, raw: &mut BigUint) {
        if i == elems.len() {
            *raw += per_gap.iter().map(|&n| factorial(n)).product::<BigUint>();
            return;
        }
        for g in elems[i].0..elems[i].1 {
            per_gap[g] += 1;
            rec(elems, i + 1, per_gap, raw);
            per_gap[g] -= 1;
        }
    }
    rec(&elems, 0, &mut per_gap, &mut raw);
    let mut sym: BigUint = p.fixed.iter().map(|&n| factorial(n)).product();
    for c in &p.classes {
        sym *= factorial(c.size);
    }
    raw / sym
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_interchangeable_after_vertex() {
        // edge 1 -> 2 and two weight-1 beta-vertices at 2: backbone 1, 2, top
        let mut p = MarkingPoset::new(3);
        p.add_class(0, 1, 1, ClassLabel::Edge { src: 1, tgt: 2, weight: 1 });
        p.add_class(1, 2, 2, ClassLabel::Beta { src: 2, weight: 1 });
        assert_eq!(p.count_extensions(), BigUint::from(1u32));
    }

    #[test]
    fn matches_naive_on_mixed_classes() {
        let mut p = MarkingPoset::new(4);
        p.add_fixed(0, 2);
        p.add_fixed(2, 1);
        p.add_class(0, 2, 2, ClassLabel::Edge { src: 0, tgt: 2, weight: 1 });
        p.add_class(1, 3, 1, ClassLabel::Edge { src: 1, tgt: 3, weight: 2 });
        p.add_class(0, 3, 1, ClassLabel::Beta { src: 0, weight: 1 });
        assert_eq!(p.count_extensions(), count_extensions_naive(&p));
        assert_eq!(p.representative().len() as u64, p.element_count());
    }
}
