//! Single-word bit-mask views of small graphs, used by the exhaustive subset
//! enumerations. Edge bits are positions in [`Graph::edges`], vertex bits are
//! vertex indices, so both counts must be at most 64.

use super::blocks::BiconnectedScratch;
use super::{EdgeSet, Graph};
use crate::error::{Error, Result};

pub(crate) struct MaskGraph<'g> {
    pub g: &'g Graph,
    pub inc: Vec<Vec<usize>>,
    /// Vertex mask of each edge's endpoints.
    pub ends: Vec<u64>,
    /// Edge mask incident to each vertex.
    pub star: Vec<u64>,
    pub all_edges: u64,
}

impl<'g> MaskGraph<'g> {
    pub fn new(g: &'g Graph) -> Result<Self> {
        if g.edge_count() > 64 {
            return Err(Error::capacity("edge count for mask enumeration", g.edge_count(), 64));
        }
        if g.vertex_count() > 64 {
            return Err(Error::capacity(
                "vertex count for mask enumeration",
                g.vertex_count(),
                64,
            ));
        }
        let ends: Vec<u64> = g.edges().iter().map(|e| bit(e.u) | bit(e.v)).collect();
        let mut star = vec![0u64; g.vertex_count()];
        for (p, e) in g.edges().iter().enumerate() {
            star[e.u] |= bit(p);
            star[e.v] |= bit(p);
        }
        let all_edges = if g.edge_count() == 64 {
            u64::MAX
        } else {
            (1u64 << g.edge_count()) - 1
        };
        Ok(MaskGraph {
            g,
            inc: g.incidence(),
            ends,
            star,
            all_edges,
        })
    }

    pub fn vertex_mask(&self, edges: u64) -> u64 {
        bits(edges).fold(0, |acc, p| acc | self.ends[p])
    }

    pub fn is_even(&self, edges: u64) -> bool {
        let mut odd = 0u64;
        for p in bits(edges) {
            let e = &self.g.edges()[p];
            if !e.is_loop() {
                odd ^= self.ends[p];
            }
        }
        odd == 0
    }

    /// Vertex masks of the nontrivial components of the edge mask.
    pub fn components(&self, edges: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut rest = edges;
        while rest != 0 {
            let mut comp_edges = rest & rest.wrapping_neg();
            let mut verts = self.ends[comp_edges.trailing_zeros() as usize];
            loop {
                let reach = verts_star(self, verts) & edges;
                if reach == comp_edges {
                    break;
                }
                comp_edges = reach;
                verts = self.vertex_mask(comp_edges);
            }
            out.push(verts);
            rest &= !comp_edges;
        }
        out
    }

    #[cfg(test)]
    pub fn is_connected(&self, edges: u64) -> bool {
        edges == 0 || self.components(edges).len() == 1
    }

    pub fn to_edge_set(&self, edges: u64) -> EdgeSet {
        bits(edges).map(|p| self.g.edges()[p].id).collect()
    }

    pub fn mask_of(&self, set: &EdgeSet) -> Result<u64> {
        let mut m = 0;
        for id in set.iter() {
            m |= bit(self.g.position(id).ok_or(Error::UnknownEdge(id))?);
        }
        Ok(m)
    }

    pub fn subgraph(&self, edges: u64) -> Graph {
        self.g.edge_subgraph(bits(edges))
    }

    /// Visits every connected edge subset that contains `root`, uses only
    /// `allowed` edges and has at most `max_edges` edges, each exactly once.
    /// The visitor receives `(edges, vertices)` and returns whether to extend
    /// the subset further. The empty subset is not visited.
    pub fn connected_subsets(
        &self,
        root: usize,
        allowed: u64,
        max_edges: usize,
        mut visit: impl FnMut(u64, u64) -> bool,
    ) {
        let ext = self.star[root] & allowed;
        self.grow(0, bit(root), ext, !allowed, max_edges, &mut visit);
    }

    fn grow(
        &self,
        set: u64,
        verts: u64,
        mut ext: u64,
        mut banned: u64,
        max_edges: usize,
        visit: &mut impl FnMut(u64, u64) -> bool,
    ) {
        if set.count_ones() as usize >= max_edges {
            return;
        }
        while ext != 0 {
            let e = ext & ext.wrapping_neg();
            ext &= !e;
            banned |= e;
            let set2 = set | e;
            let verts2 = verts | self.ends[e.trailing_zeros() as usize];
            if visit(set2, verts2) {
                let ext2 = (ext | verts_star(self, verts2)) & !set2 & !banned;
                self.grow(set2, verts2, ext2, banned, max_edges, visit);
            }
        }
    }
}

fn verts_star(mg: &MaskGraph<'_>, verts: u64) -> u64 {
    bits(verts).fold(0, |acc, v| acc | mg.star[v])
}

/// Blocks of masked subgraphs with reused buffers.
pub(crate) struct MaskBlocks {
    scratch: BiconnectedScratch,
    out: Vec<u64>,
}

impl MaskBlocks {
    pub fn new(n: usize) -> Self {
        MaskBlocks {
            scratch: BiconnectedScratch::new(n),
            out: Vec::new(),
        }
    }

    pub fn blocks(&mut self, mg: &MaskGraph<'_>, edges: u64) -> &[u64] {
        self.out.clear();
        let out = &mut self.out;
        self.scratch.run(
            mg.g,
            &mg.inc,
            |p| edges & bit(p) != 0,
            |block| out.push(block.iter().fold(0, |acc, &p| acc | bit(p))),
        );
        &self.out
    }
}

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}
