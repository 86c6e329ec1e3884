//! Floor diagrams, their markings, and the direct Severi degree sum.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::poset::{ClassLabel, MarkingPoset};
use crate::seq::{factorial, TangencySequence};
use crate::{Error, Result};

/// A weighted edge (source, target, weight).
pub type Edge = (usize, usize, u32);

/// A floor diagram on vertices 1..=d with edges sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FloorDiagram {
    d: usize,
    edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramInvariants {
    pub degree: usize,
    pub connected: bool,
    /// Genus (first Betti number) of each connected component, ordered by smallest vertex.
    pub genera: Vec<usize>,
    pub cogenus: usize,
    pub multiplicity: BigUint,
}

impl FloorDiagram {
    pub fn new(d: usize, mut edges: Vec<Edge>) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        edges.sort();
        for &(i, j, w) in &edges {
            if !(1 <= i && i < j && j <= d && w >= 1) {
                return Err(Error::InvalidDiagram(format!("bad edge ({i},{j},{w})")));
            }
        }
        let fd = Self { d, edges };
        for v in 1..=d {
            if fd.divergence(v) > 1 {
                return Err(Error::InvalidDiagram(format!("divergence at vertex {v} exceeds 1")));
            }
        }
        Ok(fd)
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Outgoing minus incoming weight at vertex v.
    pub fn divergence(&self, v: usize) -> i64 {
        let mut div = 0i64;
        for &(i, j, w) in &self.edges {
            if i == v {
                div += w as i64;
            }
            if j == v {
                div -= w as i64;
            }
        }
        div
    }

    pub fn multiplicity(&self) -> BigUint {
        let mut m = BigUint::one();
        for &(_, _, w) in &self.edges {
            m *= w as u64 * w as u64;
        }
        m
    }

    /// d(d-1)/2 - #E, equal to the connected or disconnected cogenus formula.
    pub fn cogenus(&self) -> usize {
        self.d * (self.d - 1) / 2 - self.edges.len()
    }

    pub fn invariants(&self) -> DiagramInvariants {
        let mut parent: Vec<usize> = (0..=self.d).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for &(i, j, _) in &self.edges {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let roots: Vec<usize> = (1..=self.d).map(|v| find(&mut parent, v)).collect();
        let mut comps: Vec<usize> = roots.clone();
        comps.sort();
        comps.dedup();
        let mut genera = Vec::new();
        let mut sizes = Vec::new();
        for &r in &comps {
            let verts = roots.iter().filter(|&&x| x == r).count();
            let edges = self
                .edges
                .iter()
                .filter(|e| roots[e.0 - 1] == r)
                .count();
            genera.push(edges + 1 - verts);
            sizes.push(verts);
        }
        // cogenus via components: sum of component cogenera plus pairwise degree products
        let mut cogenus = 0usize;
        for (k, &dk) in sizes.iter().enumerate() {
            cogenus += (dk - 1) * (dk.max(2) - 2) / 2 - genera[k];
            for &dl in &sizes[k + 1..] {
                cogenus += dk * dl;
            }
        }
        debug_assert_eq!(cogenus, self.cogenus());
        DiagramInvariants {
            degree: self.d,
            connected: comps.len() == 1,
            genera,
            cogenus,
            multiplicity: self.multiplicity(),
        }
    }
}

/// Visits every floor diagram of degree d and cogenus delta exactly once, in a
/// deterministic order.
///
/// Vertices are processed left to right, keeping the multiset of edges still
/// open. The cogenus splits as sum over gaps g of (g - c_g) plus sum over edges
/// of (weight * length - 1), where c_g is the weight crossing gap g; both parts
/// are non-negative and only grow, which gives the pruning bound.
pub fn for_each_floor_diagram(d: usize, delta: usize, f: &mut dyn FnMut(&FloorDiagram)) {
    if d == 0 {
        return;
    }
    let mut st = EnumState {
        d,
        delta: delta as i64,
        open: Vec::new(),
        edges: Vec::new(),
    };
    st.vertex(1, 0, f);
}

pub fn enumerate_floor_diagrams(d: usize, delta: usize) -> Vec<FloorDiagram> {
    let mut out = Vec::new();
    for_each_floor_diagram(d, delta, &mut |fd| out.push(fd.clone()));
    out
}

struct EnumState {
    d: usize,
    delta: i64,
    /// open edges (source, weight), sorted
    open: Vec<(usize, u32)>,
    edges: Vec<Edge>,
}

impl EnumState {
    /// `cost` is the exact cogenus contribution of closed edges and finished gaps.
    fn vertex(&mut self, v: usize, cost: i64, f: &mut dyn FnMut(&FloorDiagram)) {
        // group open edges by (source, weight)
        let mut groups: Vec<((usize, u32), usize)> = Vec::new();
        for &e in &self.open {
            match groups.last_mut() {
                Some(g) if g.0 == e => g.1 += 1,
                _ => groups.push((e, 1)),
            }
        }
        let mut take = alloc::vec![0usize; groups.len()];
        self.close(v, cost, &groups, 0, &mut take, f);
    }

    fn close(
        &mut self,
        v: usize,
        cost: i64,
        groups: &[((usize, u32), usize)],
        pos: usize,
        take: &mut Vec<usize>,
        f: &mut dyn FnMut(&FloorDiagram),
    ) {
        if pos < groups.len() {
            let (_, n) = groups[pos];
            let lo = if v == self.d { n } else { 0 };
            for t in lo..=n {
                take[pos] = t;
                self.close(v, cost, groups, pos + 1, take, f);
            }
            return;
        }
        // apply the closing choice
        let saved_open = self.open.clone();
        let saved_edges = self.edges.len();
        let mut inflow = 0u32;
        let mut cost = cost;
        let mut remaining = Vec::new();
        for (g, &((src, w), n)) in groups.iter().enumerate() {
            for _ in 0..take[g] {
                self.edges.push((src, v, w));
                inflow += w;
                cost += (w as i64) * (v - src) as i64 - 1;
            }
            for _ in take[g]..n {
                remaining.push((src, w));
            }
        }
        self.open = remaining;
        if v == self.d {
            if cost == self.delta {
                let mut edges = self.edges.clone();
                edges.sort();
                f(&FloorDiagram { d: self.d, edges });
            }
        } else {
            let mut outs = Vec::new();
            self.out_edges(v, cost, inflow + 1, u32::MAX, &mut outs, f);
        }
        self.open = saved_open;
        self.edges.truncate(saved_edges);
    }

    /// Chooses new outgoing weights at v as a non-increasing list.
    fn out_edges(
        &mut self,
        v: usize,
        cost: i64,
        budget: u32,
        max_w: u32,
        outs: &mut Vec<u32>,
        f: &mut dyn FnMut(&FloorDiagram),
    ) {
        // finish vertex v with the current choice
        {
            let saved = self.open.clone();
            for &w in outs.iter() {
                self.open.push((v, w));
            }
            self.open.sort();
            let crossing: u32 = self.open.iter().map(|e| e.1).sum();
            let gap_cost = v as i64 - crossing as i64;
            let mut bound = cost + gap_cost;
            for &(src, w) in &self.open {
                bound += w as i64 * (v + 1 - src) as i64 - 1;
            }
            if gap_cost >= 0 && bound <= self.delta {
                self.vertex(v + 1, cost + gap_cost, f);
            }
            self.open = saved;
        }
        let top = budget.min(max_w).min(self.delta as u32 + 1);
        for w in (1..=top).rev() {
            outs.push(w);
            self.out_edges(v, cost, budget - w, w, outs, f);
            outs.pop();
        }
    }
}

/// Per-vertex sequences (alpha^i, beta^i), i = 1..=d, stored at index i - 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompatiblePair {
    pub alpha: Vec<TangencySequence>,
    pub beta: Vec<TangencySequence>,
}

fn check_degree(fd: &FloorDiagram, alpha: &TangencySequence, beta: &TangencySequence) -> Result<()> {
    let deg = (alpha.weighted() + beta.weighted()) as usize;
    if deg != fd.degree() {
        return Err(Error::DegreeMismatch {
            diagram: fd.degree(),
            sequences: deg,
        });
    }
    Ok(())
}

/// All sequences s <= bound with sum i s_i = target.
fn sequences_with_weight(bound: &TangencySequence, target: u64) -> Vec<TangencySequence> {
    let mut out = Vec::new();
    let n = bound.support_len().min(target as usize);
    let mut cur = alloc::vec![0u64; n];
    fn rec(i: usize, left: u64, bound: &TangencySequence, cur: &mut Vec<u64>, out: &mut Vec<TangencySequence>) {
        if left == 0 {
            out.push(TangencySequence::new(cur.clone()));
            return;
        }
        if i > cur.len() {
            return;
        }
        let max = bound.get(i).min(left / i as u64);
        for x in (0..=max).rev() {
            cur[i - 1] = x;
            rec(i + 1, left - x * i as u64, bound, cur, out);
        }
        cur[i - 1] = 0;
    }
    rec(1, target, bound, &mut cur, &mut out);
    out
}

/// All compatible pairs for D and (alpha, beta).
pub fn enumerate_compatible_pairs(
    fd: &FloorDiagram,
    alpha: &TangencySequence,
    beta: &TangencySequence,
) -> Result<Vec<CompatiblePair>> {
    check_degree(fd, alpha, beta)?;
    let d = fd.degree();
    let need: Vec<u64> = (1..=d).map(|v| (1 - fd.divergence(v)) as u64).collect();
    let mut out = Vec::new();
    let mut pa = Vec::with_capacity(d);
    let mut pb = Vec::with_capacity(d);
    #[allow(clippy::too_many_arguments)]
    fn rec(
        v: usize,
        need: &[u64],
        ra: &TangencySequence,
        rb: &TangencySequence,
        pa: &mut Vec<TangencySequence>,
        pb: &mut Vec<TangencySequence>,
        out: &mut Vec<CompatiblePair>,
    ) {
        let d = need.len();
        if v == d {
            // last vertex takes the rest
            if ra.weighted() + rb.weighted() == need[d - 1] {
                pa.push(ra.clone());
                pb.push(rb.clone());
                out.push(CompatiblePair {
                    alpha: pa.clone(),
                    beta: pb.clone(),
                });
                pa.pop();
                pb.pop();
            }
            return;
        }
        let target = need[v - 1];
        for ta in 0..=target {
            for a in sequences_with_weight(ra, ta) {
                for b in sequences_with_weight(rb, target - ta) {
                    let na = ra.checked_sub(&a).expect("bounded");
                    let nb = rb.checked_sub(&b).expect("bounded");
                    pa.push(a.clone());
                    pb.push(b);
                    rec(v + 1, need, &na, &nb, pa, pb, out);
                    pa.pop();
                    pb.pop();
                }
            }
        }
    }
    rec(1, &need, alpha, beta, &mut pa, &mut pb, &mut out);
    Ok(out)
}

/// The marking poset of (D, pair): backbone 1..=d plus a virtual top vertex,
/// edge midpoints between their endpoints, beta-vertices above their floor.
pub fn pair_poset(fd: &FloorDiagram, pair: &CompatiblePair) -> MarkingPoset {
    let d = fd.degree();
    let mut p = MarkingPoset::new(d + 1);
    for &(i, j, w) in fd.edges() {
        p.add_class(i - 1, j - 1, 1, ClassLabel::Edge { src: i, tgt: j, weight: w });
    }
    for (v, b) in pair.beta.iter().enumerate() {
        for (j, n) in b.iter() {
            p.add_class(v, d, n, ClassLabel::Beta { src: v + 1, weight: j as u32 });
        }
    }
    p
}

/// Number of (alpha, beta)-markings of D with the given compatible pair, up to equivalence.
pub fn count_markings_for_pair(fd: &FloorDiagram, pair: &CompatiblePair) -> Result<BigUint> {
    let d = fd.degree();
    if pair.alpha.len() != d || pair.beta.len() != d {
        return Err(Error::Incompatible(0));
    }
    for v in 1..=d {
        let w = pair.alpha[v - 1].weighted() + pair.beta[v - 1].weighted();
        if w as i64 != 1 - fd.divergence(v) {
            return Err(Error::Incompatible(v));
        }
    }
    // alpha-vertices sit on top sorted by weight; equal weights from different
    // floors may be permuted, equal weights from one floor are equivalent
    let mut alpha_total = TangencySequence::zero();
    let mut alpha_den = BigUint::one();
    for a in &pair.alpha {
        alpha_total = alpha_total.add(a);
        alpha_den *= a.factorial();
    }
    let alpha_factor = alpha_total.factorial() / alpha_den;
    Ok(pair_poset(fd, pair).count_extensions() * alpha_factor)
}

/// nu_{alpha,beta}(D): markings summed over compatible pairs.
pub fn count_markings(fd: &FloorDiagram, alpha: &TangencySequence, beta: &TangencySequence) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for pair in enumerate_compatible_pairs(fd, alpha, beta)? {
        total += count_markings_for_pair(fd, &pair)?;
    }
    Ok(total)
}

/// mu_beta(D) nu_{alpha,beta}(D) for a single diagram.
pub fn diagram_contribution(fd: &FloorDiagram, alpha: &TangencySequence, beta: &TangencySequence) -> Result<BigUint> {
    let nu = count_markings(fd, alpha, beta)?;
    if nu.is_zero() {
        return Ok(nu);
    }
    Ok(nu * fd.multiplicity() * beta.weight_power())
}

/// Relative Severi degree by summing over all floor diagrams.
pub fn severi_degree_enum(delta: usize, alpha: &TangencySequence, beta: &TangencySequence) -> Result<BigUint> {
    let d = (alpha.weighted() + beta.weighted()) as usize;
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut total = BigUint::zero();
    let mut err = None;
    for_each_floor_diagram(d, delta, &mut |fd| {
        if err.is_some() {
            return;
        }
        match diagram_contribution(fd, alpha, beta) {
            Ok(x) => total += x,
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// |beta|! / beta! * 1^{beta_1} 2^{beta_2} ..., the cogenus-0 degree.
pub fn cogenus_zero_degree(beta: &TangencySequence) -> BigUint {
    factorial(beta.norm()) / beta.factorial() * beta.weight_power()
}
