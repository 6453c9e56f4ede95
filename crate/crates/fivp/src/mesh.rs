//! Time meshes: graded near the origin, optionally geometric in the tail.
//!
//! Solutions behave like `x₀ + c t^α` near `t = 0`, so nodes are clustered
//! there as `t_j = T (j/N)^r`; the default grading `r = 2/α` restores
//! second-order accuracy of the product-trapezoidal scheme. Long-horizon
//! runs (tail exponent fits need decades of `t`, not uniform resolution)
//! use a graded head on `[0, 1]` followed by a fixed number of
//! logarithmically spaced nodes per decade.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MeshError {
    #[error("bad mesh parameters: {0}")]
    BadMeshParams(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    nodes: Vec<f64>,
    grading: f64,
    nodes_per_decade: Option<usize>,
}

impl Mesh {
    /// Graded mesh `t_j = T (j/N)^r`, `j = 0..=N`.
    pub fn graded(t_end: f64, n: usize, r: f64) -> Result<Mesh, MeshError> {
        if !(t_end > 0.0) || n < 2 || !(r >= 1.0) {
            return Err(MeshError::BadMeshParams(format!(
                "need T > 0, N >= 2, r >= 1; got T={t_end}, N={n}, r={r}"
            )));
        }
        let nodes = (0..=n)
            .map(|j| t_end * (j as f64 / n as f64).powf(r))
            .collect();
        Ok(Mesh { nodes, grading: r, nodes_per_decade: None })
    }

    /// Uniform mesh (grading exponent 1).
    pub fn uniform(t_end: f64, n: usize) -> Result<Mesh, MeshError> {
        Mesh::graded(t_end, n, 1.0)
    }

    /// Graded mesh with the default grading `r = 2/α` (never below 1).
    pub fn graded_for_order(t_end: f64, n: usize, alpha: f64) -> Result<Mesh, MeshError> {
        Mesh::graded(t_end, n, (2.0 / alpha).max(1.0))
    }

    /// Long-horizon mesh: a graded head `t_j = (j/n₀)^r` on `[0, 1]` with
    /// `n₀ = nodes_per_decade` cells, then `nodes_per_decade` log-spaced
    /// nodes per decade up to `T` (the last node lands exactly on `T`).
    pub fn long_horizon(
        t_end: f64,
        nodes_per_decade: usize,
        r: f64,
    ) -> Result<Mesh, MeshError> {
        if !(t_end >= 10.0) || nodes_per_decade < 2 || !(r >= 1.0) {
            return Err(MeshError::BadMeshParams(format!(
                "need T >= 10, nodes_per_decade >= 2, r >= 1; got T={t_end}, \
                 nodes_per_decade={nodes_per_decade}, r={r}"
            )));
        }
        let npd = nodes_per_decade;
        let decades = t_end.log10();
        let mut nodes: Vec<f64> =
            (0..=npd).map(|j| (j as f64 / npd as f64).powf(r)).collect();
        let total_tail = (decades * npd as f64).round() as usize;
        for i in 1..=total_tail {
            nodes.push(10f64.powf(i as f64 / npd as f64));
        }
        // land the final node exactly on T
        let last = nodes.last_mut().unwrap();
        if (*last - t_end).abs() < 1e-9 * t_end {
            *last = t_end;
        } else if *last < t_end {
            nodes.push(t_end);
        } else {
            *last = t_end;
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(MeshError::BadMeshParams(
                "tail resolution collides with head nodes".into(),
            ));
        }
        Ok(Mesh { nodes, grading: r, nodes_per_decade: Some(npd) })
    }

    /// Adopt an externally produced node list (must be strictly increasing
    /// with at least two nodes).
    pub(crate) fn from_raw_nodes(nodes: Vec<f64>) -> Result<Mesh, MeshError> {
        if nodes.len() < 2 || nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(MeshError::BadMeshParams(
                "nodes must be strictly increasing with at least two entries".into(),
            ));
        }
        Ok(Mesh { nodes, grading: 1.0, nodes_per_decade: None })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Number of cells (nodes minus one).
    pub fn n(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn t_end(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    pub fn grading(&self) -> f64 {
        self.grading
    }

    pub fn nodes_per_decade(&self) -> Option<usize> {
        self.nodes_per_decade
    }
}
