use serde::Serialize;

use super::{EdgeSet, Graph, Vertex};

/// Blocks (maximal 2-connected subgraphs, a single edge counting as one),
/// cut vertices, and the edges of the block-cutpoint forest.
///
/// A loop forms a block of its own. Blocks are ordered by their smallest
/// edge id; a vertex is a cut vertex when it lies in two or more blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<EdgeSet>,
    pub cut_vertices: Vec<Vertex>,
    /// `(block index, cut vertex)` pairs, sorted.
    pub tree_edges: Vec<(usize, Vertex)>,
    #[serde(skip)]
    block_vertices: Vec<Vec<Vertex>>,
}

impl BlockDecomposition {
    pub fn block_vertices(&self, block: usize) -> &[Vertex] {
        &self.block_vertices[block]
    }

    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    pub fn blocks_containing(&self, v: Vertex) -> impl Iterator<Item = usize> + '_ {
        (0..self.blocks.len()).filter(move |&b| self.block_vertices[b].binary_search(&v).is_ok())
    }
}

pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let inc = g.incidence();
    let mut scratch = BiconnectedScratch::new(g.vertex_count());
    let mut raw: Vec<Vec<usize>> = Vec::new();
    scratch.run(g, &inc, |_| true, |block| raw.push(block.to_vec()));

    let mut blocks: Vec<(EdgeSet, Vec<Vertex>)> = raw
        .into_iter()
        .map(|positions| {
            let set: EdgeSet = positions.iter().map(|&p| g.edges()[p].id).collect();
            let mut verts: Vec<Vertex> = positions
                .iter()
                .flat_map(|&p| [g.edges()[p].u, g.edges()[p].v])
                .collect();
            verts.sort_unstable();
            verts.dedup();
            (set, verts)
        })
        .collect();
    blocks.sort_by_key(|(set, _)| set.iter().next());

    let mut count = vec![0usize; g.vertex_count()];
    for (_, verts) in &blocks {
        for &v in verts {
            count[v] += 1;
        }
    }
    let cut_vertices: Vec<Vertex> = (0..g.vertex_count()).filter(|&v| count[v] >= 2).collect();
    let mut tree_edges = Vec::new();
    for (b, (_, verts)) in blocks.iter().enumerate() {
        for &v in verts {
            if count[v] >= 2 {
                tree_edges.push((b, v));
            }
        }
    }
    let (blocks, block_vertices) = blocks.into_iter().unzip();
    BlockDecomposition {
        blocks,
        cut_vertices,
        tree_edges,
        block_vertices,
    }
}

const NONE: usize = usize::MAX;

struct Frame {
    v: usize,
    parent_edge: usize,
    next: usize,
}

/// Reusable buffers for the lowpoint DFS, so that subset loops do not
/// allocate per call.
pub(crate) struct BiconnectedScratch {
    disc: Vec<usize>,
    low: Vec<usize>,
    frames: Vec<Frame>,
    edge_stack: Vec<usize>,
    block: Vec<usize>,
}

impl BiconnectedScratch {
    pub(crate) fn new(n: usize) -> Self {
        BiconnectedScratch {
            disc: vec![NONE; n],
            low: vec![0; n],
            frames: Vec::new(),
            edge_stack: Vec::new(),
            block: Vec::new(),
        }
    }

    /// Emits the blocks of the subgraph formed by the active edges, each as a
    /// list of edge positions.
    pub(crate) fn run(
        &mut self,
        g: &Graph,
        inc: &[Vec<usize>],
        active: impl Fn(usize) -> bool,
        mut emit: impl FnMut(&[usize]),
    ) {
        let edges = g.edges();
        let n = g.vertex_count();
        if self.disc.len() < n {
            self.disc.resize(n, NONE);
            self.low.resize(n, 0);
        }
        self.disc[..n].iter_mut().for_each(|d| *d = NONE);

        for (p, e) in edges.iter().enumerate() {
            if e.is_loop() && active(p) {
                emit(&[p]);
            }
        }

        let mut time = 0;
        for root in 0..n {
            if self.disc[root] != NONE {
                continue;
            }
            self.disc[root] = time;
            self.low[root] = time;
            time += 1;
            self.frames.push(Frame {
                v: root,
                parent_edge: NONE,
                next: 0,
            });
            while let Some(top) = self.frames.last_mut() {
                let v = top.v;
                if top.next < inc[v].len() {
                    let p = inc[v][top.next];
                    top.next += 1;
                    if p == top.parent_edge || !active(p) || edges[p].is_loop() {
                        continue;
                    }
                    let w = edges[p].other(v);
                    if self.disc[w] == NONE {
                        self.edge_stack.push(p);
                        self.disc[w] = time;
                        self.low[w] = time;
                        time += 1;
                        self.frames.push(Frame {
                            v: w,
                            parent_edge: p,
                            next: 0,
                        });
                    } else if self.disc[w] < self.disc[v] {
                        self.edge_stack.push(p);
                        self.low[v] = self.low[v].min(self.disc[w]);
                    }
                } else {
                    let done = self.frames.pop().expect("nonempty");
                    if let Some(parent) = self.frames.last() {
                        let u = parent.v;
                        self.low[u] = self.low[u].min(self.low[v]);
                        if self.low[v] >= self.disc[u] {
                            self.block.clear();
                            while let Some(q) = self.edge_stack.pop() {
                                self.block.push(q);
                                if q == done.parent_edge {
                                    break;
                                }
                            }
                            emit(&self.block);
                        }
                    }
                }
            }
        }
    }
}
