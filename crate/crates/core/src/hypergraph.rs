//! The triangle hypergraph of an arrangement: one vertex per line, one
//! edge per triple of lines bounding a face of size three.

use std::collections::HashMap;

use crate::arrangement::Arrangement;
use crate::error::HypergraphError;

pub type Triple = [u32; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriHypergraph {
    n: usize,
    edges: Vec<Triple>,
    pair_index: HashMap<(u32, u32), Vec<u32>>,
}

impl TriHypergraph {
    /// Edges are sorted triples; duplicates are merged.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Triple>) -> Result<Self, HypergraphError> {
        let mut edges: Vec<Triple> = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e
            })
            .collect();
        for e in &edges {
            if let Some(&bad) = e.iter().find(|&&v| v as usize >= n) {
                return Err(HypergraphError::UnknownVertexId(bad as usize));
            }
            assert!(e[0] < e[1] && e[1] < e[2], "hyperedge with repeated vertex: {e:?}");
        }
        edges.sort_unstable();
        edges.dedup();
        let mut pair_index: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            for (x, y) in [(e[0], e[1]), (e[0], e[2]), (e[1], e[2])] {
                pair_index.entry((x, y)).or_default().push(i as u32);
            }
        }
        Ok(TriHypergraph { n, edges, pair_index })
    }

    pub fn from_arrangement(arr: &Arrangement) -> TriHypergraph {
        let edges = arr.faces().filter(|f| f.size() == 3).map(|f| {
            let l = f.bounding_lines;
            [l[0], l[1], l[2]]
        });
        TriHypergraph::new(arr.num_lines(), edges).expect("face lines are valid ids")
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    /// Edges containing both `u` and `v`.
    pub fn edges_with_pair(&self, u: u32, v: u32) -> &[u32] {
        let key = if u < v { (u, v) } else { (v, u) };
        self.pair_index.get(&key).map_or(&[], |v| v.as_slice())
    }

    pub fn max_pair_degree(&self) -> usize {
        self.pair_index.values().map(Vec::len).max().unwrap_or(0)
    }

    /// For each vertex, the other two vertices of each edge containing it.
    pub fn incidence(&self) -> Vec<Vec<(u32, u32)>> {
        let mut inc = vec![Vec::new(); self.n];
        for e in &self.edges {
            inc[e[0] as usize].push((e[1], e[2]));
            inc[e[1] as usize].push((e[0], e[2]));
            inc[e[2] as usize].push((e[0], e[1]));
        }
        inc
    }

    fn mask(&self, set: &[usize]) -> Result<Vec<bool>, HypergraphError> {
        let mut mask = vec![false; self.n];
        for &v in set {
            *mask.get_mut(v).ok_or(HypergraphError::UnknownVertexId(v))? = true;
        }
        Ok(mask)
    }

    /// Sub-hypergraph on `subset`, reindexed in the order given. Returns the
    /// new-to-old id map alongside.
    pub fn induced(&self, subset: &[usize]) -> Result<(TriHypergraph, Vec<usize>), HypergraphError> {
        let mut new_id = vec![u32::MAX; self.n];
        for (i, &v) in subset.iter().enumerate() {
            *new_id.get_mut(v).ok_or(HypergraphError::UnknownVertexId(v))? = i as u32;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| new_id[v as usize] != u32::MAX))
            .map(|e| [new_id[e[0] as usize], new_id[e[1] as usize], new_id[e[2] as usize]]);
        let h = TriHypergraph::new(subset.len(), edges)?;
        Ok((h, subset.to_vec()))
    }

    /// True iff no edge lies entirely inside `set`.
    pub fn is_independent_set(&self, set: &[usize]) -> Result<bool, HypergraphError> {
        let mask = self.mask(set)?;
        Ok(!self.edges.iter().any(|e| e.iter().all(|&v| mask[v as usize])))
    }
}
