use std::collections::HashMap;
use std::fmt;

use crate::blob::{Component, Manifold};

/// An arc between two gaps of one component. `level` orders arcs with the
/// same support: level 1 is innermost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlobArc {
    pub component: usize,
    pub start_gap: usize,
    pub end_gap: usize,
    pub level: u32,
}

impl fmt::Display for BlobArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.component > 0 {
            write!(f, "c{}:", self.component)?;
        }
        write!(f, "[{}→{}]", self.start_gap, self.end_gap)?;
        if self.level > 1 {
            write!(f, "^{}", self.level)?;
        }
        Ok(())
    }
}

/// Geometry of a level-1 arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcInfo {
    pub component: usize,
    pub start_gap: usize,
    pub end_gap: usize,
    /// Global site indices in reading order.
    pub sites: Vec<usize>,
    /// Sites and interior gaps of the component, as a bit set.
    pub cells: u64,
    pub full: bool,
}

impl ArcInfo {
    fn new(manifold: &Manifold, component: usize, start_gap: usize, end_gap: usize) -> Self {
        let offset = manifold.component_offset(component);
        let (local, cells, full) = match manifold.components()[component] {
            // cell 2s = site s, cell 2g + 1 = gap g
            Component::Circle(n) => {
                let len = if start_gap == end_gap { n } else { (end_gap + n - start_gap) % n };
                let local: Vec<usize> = (1..=len).map(|i| (start_gap + i) % n).collect();
                let mut cells = 0u64;
                for (i, &s) in local.iter().enumerate() {
                    cells |= 1 << (2 * s);
                    if i + 1 < len {
                        cells |= 1 << (2 * s + 1);
                    }
                }
                (local, cells, start_gap == end_gap)
            }
            // cell 2i = gap i, cell 2i + 1 = site i
            Component::Interval(n) => {
                let local: Vec<usize> = (start_gap..end_gap).collect();
                let mut cells = 0u64;
                for &s in &local {
                    cells |= 1 << (2 * s + 1);
                }
                for g in start_gap + 1..end_gap {
                    cells |= 1 << (2 * g);
                }
                (local, cells, start_gap == 0 && end_gap == n)
            }
        };
        ArcInfo { component, start_gap, end_gap, sites: local.into_iter().map(|s| s + offset).collect(), cells, full }
    }

    pub fn site_count(&self) -> usize {
        self.sites.len()
    }

    pub fn at_level(&self, level: u32) -> BlobArc {
        BlobArc { component: self.component, start_gap: self.start_gap, end_gap: self.end_gap, level }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Disjoint,
    /// first strictly inside second
    Inside,
    Contains,
    Same,
    Crossing,
}

/// All level-1 arcs of a manifold in canonical order, with their pairwise
/// relations.
#[derive(Clone, Debug)]
pub struct Supports {
    manifold: Manifold,
    arcs: Vec<ArcInfo>,
    relation: Vec<Vec<Relation>>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl Supports {
    pub fn new(manifold: &Manifold) -> Self {
        assert!(manifold.components().iter().all(|c| c.sites() <= 31), "at most 31 sites per component");
        let mut arcs = Vec::new();
        for (c, comp) in manifold.components().iter().enumerate() {
            match *comp {
                Component::Circle(n) => {
                    for s in 0..n {
                        for e in 0..n {
                            arcs.push(ArcInfo::new(manifold, c, s, e));
                        }
                    }
                }
                Component::Interval(n) => {
                    for s in 0..=n {
                        for e in s + 1..=n {
                            arcs.push(ArcInfo::new(manifold, c, s, e));
                        }
                    }
                }
            }
        }
        // (component, start gap, larger first)
        arcs.sort_by_key(|a| (a.component, a.start_gap, std::cmp::Reverse(a.site_count())));
        let relation = arcs
            .iter()
            .map(|a| {
                arcs.iter()
                    .map(|b| {
                        if a.component != b.component || a.cells & b.cells == 0 {
                            Relation::Disjoint
                        } else if a.cells == b.cells {
                            Relation::Same
                        } else if a.cells & !b.cells == 0 {
                            Relation::Inside
                        } else if b.cells & !a.cells == 0 {
                            Relation::Contains
                        } else {
                            Relation::Crossing
                        }
                    })
                    .collect()
            })
            .collect();
        let index = arcs.iter().enumerate().map(|(i, a)| ((a.component, a.start_gap, a.end_gap), i)).collect();
        Supports { manifold: manifold.clone(), arcs, relation, index }
    }

    pub fn manifold(&self) -> &Manifold {
        &self.manifold
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn info(&self, id: usize) -> &ArcInfo {
        &self.arcs[id]
    }

    pub fn arcs(&self) -> &[ArcInfo] {
        &self.arcs
    }

    pub fn relation(&self, a: usize, b: usize) -> Relation {
        self.relation[a][b]
    }

    pub fn id_of(&self, component: usize, start_gap: usize, end_gap: usize) -> Option<usize> {
        self.index.get(&(component, start_gap, end_gap)).copied()
    }

    /// Configurations in every degree `0..=cap`; `max_level` bounds tower
    /// heights (1 gives the multiplicity-free variant).
    pub fn configurations(&self, cap: usize, max_level: u32) -> Vec<Vec<Configuration>> {
        let mut families: Vec<Vec<Vec<usize>>> = vec![Vec::new(); cap + 1];
        let mut chosen = Vec::new();
        self.laminar(0, cap, &mut chosen, &mut families);
        let mut out: Vec<Vec<Configuration>> = vec![Vec::new(); cap + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            for size in 0..=k {
                for fam in &families[size] {
                    for mult in compositions(k, size, max_level) {
                        let mut entries = Vec::with_capacity(k);
                        for (&sid, &m) in fam.iter().zip(&mult) {
                            for level in 1..=m {
                                entries.push((sid, level));
                            }
                        }
                        slot.push(Configuration { entries });
                    }
                }
            }
            slot.sort();
        }
        out
    }

    fn laminar(&self, next: usize, cap: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        out[chosen.len()].push(chosen.clone());
        if chosen.len() == cap {
            return;
        }
        for id in next..self.arcs.len() {
            if chosen.iter().all(|&c| matches!(self.relation[c][id], Relation::Disjoint | Relation::Inside | Relation::Contains)) {
                chosen.push(id);
                self.laminar(id + 1, cap, chosen, out);
                chosen.pop();
            }
        }
    }
}

/// Ordered tuples of `parts` positive integers `≤ max` summing to `total`.
fn compositions(total: usize, parts: usize, max: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let hi = (total - (parts - 1).min(total)).min(max as usize);
    for first in 1..=hi {
        if total < first {
            break;
        }
        for mut rest in compositions(total - first, parts - 1, max) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// Level-1 arcs in canonical order.
pub fn enumerate_arcs(manifold: &Manifold) -> Vec<BlobArc> {
    Supports::new(manifold).arcs.iter().map(|a| a.at_level(1)).collect()
}

/// Canonical configurations of `k` arcs with tower heights at most
/// `max_level`.
pub fn enumerate_configurations(manifold: &Manifold, k: usize, max_level: u32) -> Vec<Vec<BlobArc>> {
    let sup = Supports::new(manifold);
    sup.configurations(k, max_level).pop().unwrap().iter().map(|c| c.arcs(&sup)).collect()
}

/// Arcs as `(support id, level)` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub entries: Vec<(usize, u32)>,
}

impl Configuration {
    pub fn empty() -> Self {
        Configuration { entries: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn arcs(&self, sup: &Supports) -> Vec<BlobArc> {
        self.entries.iter().map(|&(s, l)| sup.info(s).at_level(l)).collect()
    }

    /// Supports whose level-1 arc has no arc strictly inside it.
    pub fn twigs(&self, sup: &Supports) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|&&(s, l)| l == 1 && !self.entries.iter().any(|&(t, _)| sup.relation(t, s) == Relation::Inside))
            .map(|&(s, _)| s)
            .collect()
    }

    /// Forgets the `i`-th arc, renumbering its tower.
    pub fn face(&self, i: usize) -> Configuration {
        let (sid, level) = self.entries[i];
        let entries = self
            .entries
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &(s, l))| if s == sid && l > level { (s, l - 1) } else { (s, l) })
            .collect();
        Configuration { entries }
    }

    /// Adds an arc on top of the tower of `sid`; returns the new
    /// configuration and the canonical position of the added arc.
    pub fn push_outer(&self, sid: usize) -> (Configuration, usize) {
        let level = self.entries.iter().filter(|(s, _)| *s == sid).count() as u32 + 1;
        let mut entries = self.entries.clone();
        let pos = entries.partition_point(|&e| e < (sid, level));
        entries.insert(pos, (sid, level));
        (Configuration { entries }, pos)
    }

    pub fn describe(&self, sup: &Supports) -> String {
        if self.entries.is_empty() {
            return "∅".into();
        }
        self.arcs(sup).iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arc_counts() {
        assert_eq!(enumerate_arcs(&Manifold::circle(2)).len(), 4);
        assert_eq!(enumerate_arcs(&Manifold::interval(1)).len(), 1);
        assert_eq!(enumerate_arcs(&Manifold::interval(3)).len(), 6);
        for n in 1..7 {
            assert_eq!(enumerate_arcs(&Manifold::circle(n)).len(), n * n);
            assert_eq!(enumerate_arcs(&Manifold::interval(n)).len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn site_sets() {
        let sup = Supports::new(&Manifold::circle(4));
        let wrap = sup.info(sup.id_of(0, 2, 1).unwrap());
        assert_eq!(wrap.sites, vec![3, 0, 1]);
        let full = sup.info(sup.id_of(0, 1, 1).unwrap());
        assert_eq!(full.sites, vec![2, 3, 0, 1]);
        assert!(full.full);
        let sup = Supports::new(&Manifold::interval(3));
        assert_eq!(sup.info(sup.id_of(0, 1, 3).unwrap()).sites, vec![1, 2]);
        assert!(sup.info(sup.id_of(0, 0, 3).unwrap()).full);
    }

    /// Independent count: pairs of (arc, level) over all ordered arc pairs,
    /// kept when nested or disjoint as geometric subsets of the circle
    /// sampled at half-integer points.
    fn brute_pairs(n: usize) -> usize {
        let arcs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |e| (s, e))).collect();
        // points: 2s for site s, 2g + 1 for gap g; an arc from gap s to gap e
        // covers the open walk between their points
        let cover = |(s, e): (usize, usize)| -> Vec<bool> {
            let mut v = vec![false; 2 * n];
            let mut p = (2 * s + 2) % (2 * n);
            let stop = 2 * e + 1;
            loop {
                if p == stop {
                    break;
                }
                v[p] = true;
                p = (p + 1) % (2 * n);
            }
            v
        };
        let mut count = 0;
        for i in 0..arcs.len() {
            for j in i..arcs.len() {
                let (a, b) = (cover(arcs[i]), cover(arcs[j]));
                let inter = (0..2 * n).any(|p| a[p] && b[p]);
                let a_in_b = (0..2 * n).all(|p| !a[p] || b[p]);
                let b_in_a = (0..2 * n).all(|p| !b[p] || a[p]);
                if i == j {
                    count += 1; // a tower of two equal arcs
                } else if !inter || a_in_b || b_in_a {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn two_blob_counts_on_circles() {
        for n in 1..6 {
            let c = enumerate_configurations(&Manifold::circle(n), 2, 2);
            assert_eq!(c.len(), brute_pairs(n), "circle({n})");
        }
        // four towers plus five nested or disjoint pairs
        assert_eq!(enumerate_configurations(&Manifold::circle(2), 2, 2).len(), 9);
        assert_eq!(enumerate_configurations(&Manifold::circle(2), 1, 1).len(), 4);
        assert_eq!(enumerate_configurations(&Manifold::circle(3), 0, 1).len(), 1);
    }

    #[test]
    fn full_arcs_at_different_gaps_cross() {
        let sup = Supports::new(&Manifold::circle(3));
        let (a, b) = (sup.id_of(0, 0, 0).unwrap(), sup.id_of(0, 1, 1).unwrap());
        assert_eq!(sup.relation(a, b), Relation::Crossing);
        // sites 1, 2 and the gap between them
        let small = sup.id_of(0, 0, 2).unwrap();
        assert_eq!(sup.relation(small, a), Relation::Inside);
        assert_eq!(sup.relation(small, b), Relation::Crossing);
        let single = sup.id_of(0, 0, 1).unwrap();
        assert_eq!(sup.relation(single, b), Relation::Inside);
    }

    #[test]
    fn faces_and_twigs() {
        let sup = Supports::new(&Manifold::interval(3));
        let full = sup.id_of(0, 0, 3).unwrap();
        let left = sup.id_of(0, 0, 1).unwrap();
        let c = Configuration { entries: vec![(full, 1), (full, 2), (left, 1)] };
        assert_eq!(c.twigs(&sup), vec![left]);
        let f = c.face(0);
        assert_eq!(f.entries, vec![(full, 1), (left, 1)]);
        let (g, pos) = f.push_outer(full);
        assert_eq!(g, c);
        assert_eq!(pos, 1);
        assert_eq!(c.face(2).twigs(&sup), vec![full]);
    }

    #[test]
    fn compositions_respect_bounds() {
        assert_eq!(compositions(3, 2, 3), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(3, 2, 1), Vec::<Vec<u32>>::new());
        assert_eq!(compositions(0, 0, 1), vec![Vec::<u32>::new()]);
    }
}
