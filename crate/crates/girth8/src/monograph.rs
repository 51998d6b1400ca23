//! Bipartite monomial graphs G_q(X^{m1}Y^{n1}, X^{m2}Y^{n2}) on two copies
//! of F_q^3, built implicitly: adjacency is recomputed from the defining
//! equations p2 + l2 = f(p1, l1), p3 + l3 = g(p1, l1), never stored.
//! Girth is computed by BFS shortest-cycle search, either from every vertex
//! or, using the translation automorphisms
//! (p1,p2,p3) -> (p1, p2+b, p3+c), [l1,l2,l3] -> [l1, l2-b, l3-c],
//! only from the q points (p1, 0, 0).

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::ffield::{FieldContext, FieldElement};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("exponent {0} out of range [1, {1}]")]
    BadExponent(u64, u64),
    #[error("q = {0} exceeds the bound {1} for this girth mode")]
    BoundExceeded(u64, u64),
}

/// Default cap on q for full-mode girth computation.
pub const FULL_MODE_MAX_Q: u64 = 13;
/// Cap on q for symmetry-mode girth computation (memory: O(q^3) words).
pub const SYMMETRY_MODE_MAX_Q: u64 = 64;

/// Exponents defining f = X^{m1} Y^{n1} and g = X^{m2} Y^{n2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonomialGraphSpec {
    pub q: u64,
    pub m1: u64,
    pub n1: u64,
    pub m2: u64,
    pub n2: u64,
}

impl MonomialGraphSpec {
    pub fn new(q: u64, m1: u64, n1: u64, m2: u64, n2: u64) -> Result<Self, GraphError> {
        for ex in [m1, n1, m2, n2] {
            if ex < 1 || ex > q - 1 {
                return Err(GraphError::BadExponent(ex, q - 1));
            }
        }
        Ok(MonomialGraphSpec { q, m1, n1, m2, n2 })
    }

    /// Gamma_3(q) = G_q(XY, XY^2).
    pub fn gamma3(q: u64) -> Self {
        MonomialGraphSpec {
            q,
            m1: 1,
            n1: 1,
            m2: 1,
            n2: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    P,
    L,
}

/// Vertex: a side plus the positional index v1 + q v2 + q^2 v3 in [0, q^3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId {
    pub side: Side,
    pub triple: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GirthMode {
    Full,
    Symmetry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GirthResult {
    /// Length of a shortest cycle; None for an acyclic graph (cannot occur
    /// for q >= 2 but kept for the record schema).
    pub girth: Option<u32>,
    /// One shortest cycle as a closed vertex sequence (first vertex not
    /// repeated at the end).
    pub certificate: Option<Vec<VertexId>>,
}

/// Implicit graph with the monomial value tables f(x, y), g(x, y)
/// precomputed (q^2 entries each).
pub struct MonomialGraph<'a> {
    ctx: &'a FieldContext,
    pub spec: MonomialGraphSpec,
    q: usize,
    f: Vec<u32>,
    g: Vec<u32>,
}

impl<'a> MonomialGraph<'a> {
    pub fn new(ctx: &'a FieldContext, spec: MonomialGraphSpec) -> Result<Self, GraphError> {
        assert_eq!(ctx.q(), spec.q, "field and spec must agree on q");
        MonomialGraphSpec::new(spec.q, spec.m1, spec.n1, spec.m2, spec.n2)?;
        let q = ctx.q() as usize;
        let mut f = vec![0u32; q * q];
        let mut g = vec![0u32; q * q];
        for x in ctx.elements() {
            let xm1 = ctx.pow(x, spec.m1);
            let xm2 = ctx.pow(x, spec.m2);
            for y in ctx.elements() {
                let idx = x.index() as usize * q + y.index() as usize;
                f[idx] = ctx.mul(xm1, ctx.pow(y, spec.n1)).0;
                g[idx] = ctx.mul(xm2, ctx.pow(y, spec.n2)).0;
            }
        }
        Ok(MonomialGraph { ctx, spec, q, f, g })
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// Number of vertices, 2q^3.
    pub fn order(&self) -> u64 {
        2 * self.q() * self.q() * self.q()
    }

    #[inline]
    pub fn encode(&self, side: Side, v1: u32, v2: u32, v3: u32) -> VertexId {
        let q = self.q as u32;
        VertexId {
            side,
            triple: v1 + q * v2 + q * q * v3,
        }
    }

    #[inline]
    pub fn decode(&self, v: VertexId) -> (u32, u32, u32) {
        let q = v.triple / self.q as u32;
        (
            v.triple % self.q as u32,
            q % self.q as u32,
            q / self.q as u32,
        )
    }

    /// The q neighbors of v on the opposite side.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.q);
        self.for_each_neighbor(v, |w| out.push(w));
        out
    }

    #[inline]
    fn for_each_neighbor<F: FnMut(VertexId)>(&self, v: VertexId, mut visit: F) {
        let ctx = self.ctx;
        let (v1, v2, v3) = self.decode(v);
        let (e2, e3) = (FieldElement(v2), FieldElement(v3));
        let other = match v.side {
            Side::P => Side::L,
            Side::L => Side::P,
        };
        for w1 in 0..self.q as u32 {
            // f and g are symmetric in the pair: for a point, x = p1, y = l1;
            // for a line, x = p1 (the free coordinate), y = l1 (fixed)
            let idx = match v.side {
                Side::P => v1 as usize * self.q + w1 as usize,
                Side::L => w1 as usize * self.q + v1 as usize,
            };
            let w2 = ctx.sub(FieldElement(self.f[idx]), e2);
            let w3 = ctx.sub(FieldElement(self.g[idx]), e3);
            visit(self.encode(other, w1, w2.0, w3.0));
        }
    }

    /// Flat index of a vertex in [0, 2q^3): points first, then lines.
    #[inline]
    fn flat(&self, v: VertexId) -> usize {
        let half = self.q * self.q * self.q;
        match v.side {
            Side::P => v.triple as usize,
            Side::L => half + v.triple as usize,
        }
    }

    #[inline]
    fn unflat(&self, i: usize) -> VertexId {
        let half = self.q * self.q * self.q;
        if i < half {
            VertexId {
                side: Side::P,
                triple: i as u32,
            }
        } else {
            VertexId {
                side: Side::L,
                triple: (i - half) as u32,
            }
        }
    }

    /// Shortest-cycle length via BFS. Full mode roots BFS at every vertex;
    /// symmetry mode only at the q points (p1, 0, 0), which is exhaustive
    /// because the coordinate-translation automorphisms act transitively on
    /// points with fixed p1 and every cycle passes through some point.
    pub fn girth(&self, mode: GirthMode) -> Result<GirthResult, GraphError> {
        let bound = match mode {
            GirthMode::Full => FULL_MODE_MAX_Q,
            GirthMode::Symmetry => SYMMETRY_MODE_MAX_Q,
        };
        if self.q() > bound {
            return Err(GraphError::BoundExceeded(self.q(), bound));
        }
        let n = self.order() as usize;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut stamp = vec![u32::MAX; n];
        let mut queue: Vec<usize> = Vec::with_capacity(n);

        let roots: Vec<usize> = match mode {
            GirthMode::Full => (0..n).collect(),
            GirthMode::Symmetry => (0..self.q as u32)
                .map(|p1| self.flat(self.encode(Side::P, p1, 0, 0)))
                .collect(),
        };

        let mut best: u32 = u32::MAX;
        let mut best_cycle: Option<Vec<usize>> = None;

        for (run, &root) in roots.iter().enumerate() {
            let run = run as u32;
            queue.clear();
            queue.push(root);
            dist[root] = 0;
            parent[root] = usize::MAX;
            stamp[root] = run;
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                let dv = dist[v];
                // any cycle through the root found deeper than best/2 cannot
                // beat the current best
                if best != u32::MAX && 2 * dv >= best {
                    break;
                }
                self.for_each_neighbor(self.unflat(v), |wid| {
                    let w = self.flat(wid);
                    if stamp[w] != run {
                        stamp[w] = run;
                        dist[w] = dv + 1;
                        parent[w] = v;
                        queue.push(w);
                    } else if parent[v] != w {
                        // non-tree edge: close a cycle through the LCA
                        let cycle = self.extract_cycle(v, w, &dist, &parent);
                        let len = cycle.len() as u32;
                        debug_assert_eq!(len % 2, 0, "bipartite graphs have even cycles");
                        if len < best {
                            best = len;
                            best_cycle = Some(cycle);
                        }
                    }
                });
            }
            if best == 4 {
                break; // bipartite minimum
            }
        }

        if best == u32::MAX {
            return Ok(GirthResult {
                girth: None,
                certificate: None,
            });
        }
        let certificate = best_cycle.map(|c| c.into_iter().map(|i| self.unflat(i)).collect());
        Ok(GirthResult {
            girth: Some(best),
            certificate,
        })
    }

    /// Walk both parent chains to the lowest common ancestor and splice the
    /// two tree paths with the non-tree edge (v, w) into a simple cycle.
    fn extract_cycle(
        &self,
        v: usize,
        w: usize,
        dist: &[u32],
        parent: &[usize],
    ) -> Vec<usize> {
        let mut pv = vec![v];
        let mut pw = vec![w];
        let (mut a, mut b) = (v, w);
        while dist[a] > dist[b] {
            a = parent[a];
            pv.push(a);
        }
        while dist[b] > dist[a] {
            b = parent[b];
            pw.push(b);
        }
        while a != b {
            a = parent[a];
            b = parent[b];
            pv.push(a);
            pw.push(b);
        }
        // pv ends at the LCA; pw's last element is the same LCA
        pw.pop();
        pw.reverse();
        pv.extend(pw);
        pv
    }

    /// Fast girth >= bound test (bound 6 or 8) without running the full BFS.
    /// A C4 exists iff two distinct points share two common neighbors; given
    /// no C4, a C6 exists iff two line-disjoint length-3 walks from some
    /// point reach the same line.
    pub fn girth_at_least(&self, bound: u32) -> Result<bool, GraphError> {
        assert!(bound == 6 || bound == 8, "bound must be 6 or 8");
        if self.has_c4() {
            return Ok(false);
        }
        if bound == 6 {
            return Ok(true);
        }
        Ok(!self.has_c6_given_no_c4())
    }

    fn has_c4(&self) -> bool {
        let q3 = (self.q * self.q * self.q) as u32;
        let mut hits: HashMap<u32, u32> = HashMap::new();
        for u in 0..q3 {
            hits.clear();
            let uid = VertexId {
                side: Side::P,
                triple: u,
            };
            for l in self.neighbors(uid) {
                for w in self.neighbors(l) {
                    if w.triple == u {
                        continue;
                    }
                    let count = hits.entry(w.triple).or_insert(0);
                    *count += 1;
                    if *count >= 2 {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Assumes no C4. Two non-backtracking length-3 walks from a point u to
    /// the same line, starting along distinct first edges, close a 6-cycle.
    fn has_c6_given_no_c4(&self) -> bool {
        let q3 = (self.q * self.q * self.q) as u32;
        let mut first_line: HashMap<u32, u32> = HashMap::new();
        for u in 0..q3 {
            first_line.clear();
            let uid = VertexId {
                side: Side::P,
                triple: u,
            };
            for l in self.neighbors(uid) {
                for v in self.neighbors(l) {
                    if v.triple == u {
                        continue;
                    }
                    for m in self.neighbors(v) {
                        if m.triple == l.triple {
                            continue;
                        }
                        match first_line.get(&m.triple) {
                            None => {
                                first_line.insert(m.triple, l.triple);
                            }
                            Some(&fl) if fl != l.triple => return true,
                            _ => {}
                        }
                    }
                }
            }
        }
        false
    }
}

/// One record of a girth census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub q: u64,
    pub m1: u64,
    pub n1: u64,
    pub m2: u64,
    pub n2: u64,
    pub girth: Option<u32>,
}

/// Enumerate all (m1, n1, m2, n2) in [1, q-1]^4 in lexicographic order and
/// compute each girth. Intended for q in {3, 5}.
pub fn scan_monomial_graphs(
    ctx: &FieldContext,
    mode: GirthMode,
) -> Result<Vec<CensusRecord>, GraphError> {
    let q = ctx.q();
    let mut out = Vec::new();
    for m1 in 1..q {
        for n1 in 1..q {
            for m2 in 1..q {
                for n2 in 1..q {
                    let spec = MonomialGraphSpec::new(q, m1, n1, m2, n2)?;
                    let graph = MonomialGraph::new(ctx, spec)?;
                    let r = graph.girth(mode)?;
                    out.push(CensusRecord {
                        q,
                        m1,
                        n1,
                        m2,
                        n2,
                        girth: r.girth,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Girths of the restricted family G_q(XY, X^kY^{2k}) for k in [1, q-1].
pub fn scan_family_xk_y2k(
    ctx: &FieldContext,
    mode: GirthMode,
) -> Result<Vec<CensusRecord>, GraphError> {
    let q = ctx.q();
    let mut out = Vec::new();
    for k in 1..q {
        let spec = MonomialGraphSpec::new(q, 1, 1, crate::modarith::star(k, q), {
            crate::modarith::star(2 * k, q)
        })?;
        let graph = MonomialGraph::new(ctx, spec)?;
        let r = graph.girth(mode)?;
        out.push(CensusRecord {
            q,
            m1: spec.m1,
            n1: spec.n1,
            m2: spec.m2,
            n2: spec.n2,
            girth: r.girth,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldContext;

    fn graph(p: u64, e: u32, spec_fn: impl Fn(u64) -> MonomialGraphSpec) -> (FieldContext, MonomialGraphSpec) {
        let ctx = FieldContext::build(p, e).unwrap();
        let spec = spec_fn(ctx.q());
        (ctx, spec)
    }

    #[test]
    fn regularity_and_order() {
        for (p, e) in [(3u64, 1u32), (5, 1)] {
            let (ctx, spec) = graph(p, e, MonomialGraphSpec::gamma3);
            let g = MonomialGraph::new(&ctx, spec).unwrap();
            assert_eq!(g.order(), 2 * ctx.q().pow(3));
            let q3 = ctx.q().pow(3) as u32;
            for side in [Side::P, Side::L] {
                for t in 0..q3 {
                    let v = VertexId { side, triple: t };
                    let nbrs = g.neighbors(v);
                    assert_eq!(nbrs.len() as u64, ctx.q());
                    let mut sorted = nbrs.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    assert_eq!(sorted.len() as u64, ctx.q(), "distinct neighbors");
                }
            }
        }
    }

    #[test]
    fn adjacency_is_symmetric_q3() {
        let (ctx, spec) = graph(3, 1, MonomialGraphSpec::gamma3);
        let g = MonomialGraph::new(&ctx, spec).unwrap();
        for t in 0..27u32 {
            let v = VertexId {
                side: Side::P,
                triple: t,
            };
            for w in g.neighbors(v) {
                assert!(g.neighbors(w).contains(&v));
            }
        }
    }

    #[test]
    fn origin_point_neighbors_in_gamma3() {
        let (ctx, spec) = graph(3, 1, MonomialGraphSpec::gamma3);
        let g = MonomialGraph::new(&ctx, spec).unwrap();
        let origin = g.encode(Side::P, 0, 0, 0);
        let mut nbrs = g.neighbors(origin);
        nbrs.sort_by_key(|v| v.triple);
        // (0,0,0) is adjacent to [l1, 0, 0] for every l1
        for (l1, v) in nbrs.iter().enumerate() {
            assert_eq!(*v, g.encode(Side::L, l1 as u32, 0, 0));
        }
    }

    #[test]
    fn gamma3_girth_eight_small() {
        for (p, e) in [(3u64, 1u32), (5, 1), (7, 1), (3, 2)] {
            let (ctx, spec) = graph(p, e, MonomialGraphSpec::gamma3);
            let g = MonomialGraph::new(&ctx, spec).unwrap();
            let full = g.girth(GirthMode::Full).unwrap();
            let symm = g.girth(GirthMode::Symmetry).unwrap();
            assert_eq!(full.girth, Some(8), "q={}", ctx.q());
            assert_eq!(symm.girth, Some(8), "q={}", ctx.q());
        }
    }

    #[test]
    fn certificate_is_a_valid_cycle() {
        for spec_exps in [(1u64, 1u64, 1u64, 2u64), (1, 1, 1, 1), (2, 2, 1, 2)] {
            let ctx = FieldContext::build(3, 1).unwrap();
            let spec =
                MonomialGraphSpec::new(3, spec_exps.0, spec_exps.1, spec_exps.2, spec_exps.3)
                    .unwrap();
            let g = MonomialGraph::new(&ctx, spec).unwrap();
            let r = g.girth(GirthMode::Full).unwrap();
            let girth = r.girth.unwrap();
            let cycle = r.certificate.unwrap();
            assert_eq!(cycle.len() as u32, girth);
            assert_eq!(girth % 2, 0);
            // distinct vertices, alternating sides, consecutive adjacency
            let mut seen = cycle.clone();
            seen.sort_by_key(|v| (v.side == Side::L, v.triple));
            seen.dedup();
            assert_eq!(seen.len(), cycle.len());
            for i in 0..cycle.len() {
                let a = cycle[i];
                let b = cycle[(i + 1) % cycle.len()];
                assert_ne!(a.side, b.side);
                assert!(g.neighbors(a).contains(&b), "edge {a:?} - {b:?}");
            }
        }
    }

    #[test]
    fn modes_agree_on_all_specs_q3() {
        let ctx = FieldContext::build(3, 1).unwrap();
        let full = scan_monomial_graphs(&ctx, GirthMode::Full).unwrap();
        let symm = scan_monomial_graphs(&ctx, GirthMode::Symmetry).unwrap();
        assert_eq!(full, symm);
        // Gamma_3(3) = (1,1,1,2) has girth 8
        let gamma = full
            .iter()
            .find(|r| (r.m1, r.n1, r.m2, r.n2) == (1, 1, 1, 2))
            .unwrap();
        assert_eq!(gamma.girth, Some(8));
    }

    #[test]
    fn girth_at_least_agrees_with_girth_q3() {
        let ctx = FieldContext::build(3, 1).unwrap();
        for m1 in 1..3u64 {
            for n1 in 1..3u64 {
                for m2 in 1..3u64 {
                    for n2 in 1..3u64 {
                        let spec = MonomialGraphSpec::new(3, m1, n1, m2, n2).unwrap();
                        let g = MonomialGraph::new(&ctx, spec).unwrap();
                        let girth = g.girth(GirthMode::Full).unwrap().girth.unwrap();
                        assert_eq!(g.girth_at_least(6).unwrap(), girth >= 6, "{spec:?}");
                        assert_eq!(g.girth_at_least(8).unwrap(), girth >= 8, "{spec:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn translation_automorphism_preserves_adjacency() {
        for (p, e) in [(3u64, 1u32), (5, 1), (7, 1)] {
            let ctx = FieldContext::build(p, e).unwrap();
            let q = ctx.q() as u32;
            let spec = MonomialGraphSpec::gamma3(ctx.q());
            let g = MonomialGraph::new(&ctx, spec).unwrap();
            // beta, gamma sampled from a fixed sweep
            for (beta, gamma) in [(1u32, 0u32), (0, 1), (1, 1), (q - 1, 1)] {
                let (eb, eg) = (FieldElement(beta), FieldElement(gamma));
                let map = |v: VertexId| -> VertexId {
                    let (v1, v2, v3) = g.decode(v);
                    match v.side {
                        Side::P => g.encode(
                            Side::P,
                            v1,
                            ctx.add(FieldElement(v2), eb).0,
                            ctx.add(FieldElement(v3), eg).0,
                        ),
                        Side::L => g.encode(
                            Side::L,
                            v1,
                            ctx.sub(FieldElement(v2), eb).0,
                            ctx.sub(FieldElement(v3), eg).0,
                        ),
                    }
                };
                for t in (0..q * q * q).step_by(7) {
                    let v = VertexId {
                        side: Side::P,
                        triple: t,
                    };
                    let mut mapped: Vec<_> = g.neighbors(v).into_iter().map(map).collect();
                    let mut of_mapped = g.neighbors(map(v));
                    mapped.sort_unstable();
                    of_mapped.sort_unstable();
                    assert_eq!(mapped, of_mapped);
                }
            }
        }
    }

    #[test]
    fn bad_spec_rejected() {
        assert!(MonomialGraphSpec::new(3, 0, 1, 1, 2).is_err());
        assert!(MonomialGraphSpec::new(3, 1, 1, 1, 3).is_err());
    }

    #[test]
    fn full_mode_bound_enforced() {
        let ctx = FieldContext::build(17, 1).unwrap();
        let g = MonomialGraph::new(&ctx, MonomialGraphSpec::gamma3(17)).unwrap();
        assert!(matches!(
            g.girth(GirthMode::Full),
            Err(GraphError::BoundExceeded(17, _))
        ));
    }
}
