/// Enumeration caps. Every exhaustive routine checks its cap up front and
/// fails with [`crate::Error::Capacity`] instead of truncating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Vertices for the 2^|V| spin enumeration.
    pub ising_vertices: usize,
    /// Cycle-space dimension for even-set enumeration.
    pub cycle_space_dim: usize,
    /// Edges for Tutte subset sums and deletion-contraction.
    pub tutte_edges: usize,
    /// Edges for block-polynomial subset sums.
    pub block_edges: usize,
    /// Edges for block-path and closed-trail enumeration.
    pub block_path_edges: usize,
    /// Vertices for the all-(U, v) zero-freeness certificate.
    pub certificate_vertices: usize,
    /// Edges for the Gruber-Kunz connected-subgraph sums.
    pub gk_edges: usize,
    /// Largest cluster size in the truncated-expansion catalog.
    pub catalog_order: usize,
    /// Pattern vertices for homomorphism densities.
    pub hom_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            ising_vertices: 24,
            cycle_space_dim: 30,
            tutte_edges: 24,
            block_edges: 20,
            block_path_edges: 30,
            certificate_vertices: 10,
            gk_edges: 14,
            catalog_order: 16,
            hom_vertices: 12,
        }
    }
}

impl Limits {
    /// Same cap for every enumeration.
    pub fn uniform(cap: usize) -> Self {
        Limits {
            ising_vertices: cap,
            cycle_space_dim: cap,
            tutte_edges: cap,
            block_edges: cap,
            block_path_edges: cap,
            certificate_vertices: cap,
            gk_edges: cap,
            catalog_order: cap,
            hom_vertices: cap,
        }
    }
}
