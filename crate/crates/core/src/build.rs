//! Constructors for the poset families used throughout the crate (boolean
//! lattices, uniform matroid flats, graph bond lattices) and JSON input and
//! output for posets and graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::braid::SetPartition;
use crate::error::{Error, Result};
use crate::poset::GradedPoset;
use crate::rlabel::EdgeLabeling;

/// Element-count guard for subset lattices (2^16 elements at the cap).
pub const BOOLEAN_CAP: usize = 16;

/// Vertex cap for graph inputs; bond lattices enumerate set partitions of
/// the vertex set.
pub const GRAPH_VERTEX_CAP: usize = 10;

fn subset_name(mask: u64) -> String {
    let mut s = String::from("{");
    let mut first = true;
    for i in 0..64 {
        if mask >> i & 1 == 1 {
            if !first {
                s.push(',');
            }
            s.push_str(&(i + 1).to_string());
            first = false;
        }
    }
    s.push('}');
    s
}

fn sorted_masks(masks: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut v: Vec<u64> = masks.into_iter().collect();
    v.sort_by_key(|&m| (m.count_ones(), m));
    v
}

/// The lattice of subsets of {1, ..., n}, each cover labeled by the element
/// it adds.
pub fn boolean_lattice(n: usize) -> Result<(GradedPoset, EdgeLabeling)> {
    if n > BOOLEAN_CAP {
        return Err(Error::SizeCap {
            what: format!("boolean lattice of rank {n}"),
            max: BOOLEAN_CAP,
        });
    }
    let masks = sorted_masks(0..1u64 << n);
    let index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let names = masks.iter().map(|&m| subset_name(m)).collect();
    let mut covers = Vec::new();
    let mut labeling = EdgeLabeling::new();
    for (i, &m) in masks.iter().enumerate() {
        for e in 0..n {
            if m >> e & 1 == 0 {
                let j = index[&(m | 1 << e)];
                covers.push((i, j));
                labeling.set(i, j, e as u32 + 1)?;
            }
        }
    }
    let poset = GradedPoset::from_named_covers(names, covers)?;
    Ok((poset, labeling))
}

/// The lattice of flats of the uniform matroid U_{k,m}: all subsets of
/// {1, ..., m} with fewer than k elements, plus the full set. Each cover
/// F < G is labeled by the smallest element of G not in F.
pub fn uniform_matroid_flats(k: usize, m: usize) -> Result<(GradedPoset, EdgeLabeling)> {
    if k > m {
        return Err(Error::InvalidParameter(format!(
            "uniform matroid U_{{{k},{m}}} needs k <= m"
        )));
    }
    if m > BOOLEAN_CAP {
        return Err(Error::SizeCap {
            what: format!("uniform matroid flats on {m} elements"),
            max: BOOLEAN_CAP,
        });
    }
    let full = (1u64 << m) - 1;
    let mut flats: Vec<u64> = (0..1u64 << m)
        .filter(|mask| (mask.count_ones() as usize) < k)
        .collect();
    flats.push(full);
    let flats = sorted_masks(flats);
    let index: HashMap<u64, usize> = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let names = flats.iter().map(|&f| subset_name(f)).collect();
    let mut covers = Vec::new();
    let mut labeling = EdgeLabeling::new();
    for (i, &f) in flats.iter().enumerate() {
        if f == full {
            continue;
        }
        let cover_masks: Vec<u64> = if (f.count_ones() as usize) < k - 1 {
            (0..m)
                .filter(|&e| f >> e & 1 == 0)
                .map(|e| f | 1 << e)
                .collect()
        } else {
            vec![full]
        };
        for g in cover_masks {
            let j = index[&g];
            covers.push((i, j));
            let added = g & !f;
            labeling.set(i, j, added.trailing_zeros() + 1)?;
        }
    }
    let poset = GradedPoset::from_named_covers(names, covers)?;
    Ok((poset, labeling))
}

/// Simple graph on vertices {1, ..., vertices} with normalized edge pairs.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct GraphInput {
    vertices: usize,
    edges: BTreeSet<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<(u32, u32)>,
}

impl TryFrom<GraphJson> for GraphInput {
    type Error = Error;
    fn try_from(raw: GraphJson) -> Result<Self> {
        GraphInput::new(raw.vertices, raw.edges)
    }
}

impl From<GraphInput> for GraphJson {
    fn from(g: GraphInput) -> Self {
        GraphJson {
            vertices: g.vertices,
            edges: g.edges.into_iter().collect(),
        }
    }
}

impl GraphInput {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::Graph("graph needs at least one vertex".into()));
        }
        if vertices > GRAPH_VERTEX_CAP {
            return Err(Error::SizeCap {
                what: format!("graph on {vertices} vertices"),
                max: GRAPH_VERTEX_CAP,
            });
        }
        let mut normalized = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Graph(format!("self loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u as usize > vertices || v as usize > vertices {
                return Err(Error::Graph(format!(
                    "edge ({u}, {v}) leaves the vertex range 1..={vertices}"
                )));
            }
            normalized.insert((u.min(v), u.max(v)));
        }
        Ok(GraphInput {
            vertices,
            edges: normalized,
        })
    }

    pub fn complete(vertices: usize) -> Result<Self> {
        let vs = vertices as u32;
        Self::new(
            vertices,
            (1..=vs).flat_map(|u| (u + 1..=vs).map(move |v| (u, v))),
        )
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    fn neighbor_lists(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.vertices + 1];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.neighbor_lists();
        let mut seen = vec![false; self.vertices + 1];
        let mut queue = std::collections::VecDeque::from([1u32]);
        seen[1] = true;
        let mut count = 0;
        while let Some(u) = queue.pop_front() {
            count += 1;
            for &v in &adj[u as usize] {
                if !std::mem::replace(&mut seen[v as usize], true) {
                    queue.push_back(v);
                }
            }
        }
        count == self.vertices
    }

    /// BFS order from vertex 1, neighbors in ascending order. Requires a
    /// connected graph.
    fn bfs_order(&self) -> Vec<u32> {
        let adj = self.neighbor_lists();
        let mut seen = vec![false; self.vertices + 1];
        let mut queue = std::collections::VecDeque::from([1u32]);
        seen[1] = true;
        let mut order = Vec::with_capacity(self.vertices);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &adj[u as usize] {
                if !std::mem::replace(&mut seen[v as usize], true) {
                    queue.push_back(v);
                }
            }
        }
        order
    }
}

/// The bond lattice of a connected graph: partitions of the vertex set whose
/// blocks induce connected subgraphs, ordered by refinement. Vertices are
/// renumbered internally by breadth-first search from vertex 1 and each merge
/// of blocks B, B' is labeled max(min B, min B') in the new numbering;
/// element names keep the original vertex numbers.
///
/// The BFS numbering makes this labeling an R-labeling for trees and
/// complete graphs. It is not one for every graph: on the 4-cycle the
/// interval below the partition grouping the three vertices other than the
/// BFS root has no weakly increasing chain under any vertex numbering.
/// Callers that need the descent machinery should gate on verify_r_labeling.
pub fn bond_lattice(graph: &GraphInput) -> Result<(GradedPoset, EdgeLabeling)> {
    if !graph.is_connected() {
        return Err(Error::Graph("bond lattice needs a connected graph".into()));
    }
    let m = graph.vertices();
    let order = graph.bfs_order();
    let mut new_of_old = vec![0u32; m + 1];
    for (i, &old) in order.iter().enumerate() {
        new_of_old[old as usize] = i as u32 + 1;
    }
    // adjacency over new numbers, as bitmasks (bit v-1 for vertex v)
    let mut adj_mask = vec![0u16; m + 1];
    for (u, v) in graph.edges() {
        let (a, b) = (new_of_old[u as usize], new_of_old[v as usize]);
        adj_mask[a as usize] |= 1 << (b - 1);
        adj_mask[b as usize] |= 1 << (a - 1);
    }
    let block_mask = |block: &[u32]| -> u16 { block.iter().map(|&v| 1u16 << (v - 1)).sum() };
    let connected_block = |block: &[u32]| -> bool {
        let mask = block_mask(block);
        let mut seen = 1u16 << (block[0] - 1);
        loop {
            let mut grown = seen;
            for v in block {
                if seen >> (v - 1) & 1 == 1 {
                    grown |= adj_mask[*v as usize] & mask;
                }
            }
            if grown == seen {
                return seen == mask;
            }
            seen = grown;
        }
    };

    let mut parts: Vec<SetPartition> = SetPartition::all_partitions(m)
        .into_iter()
        .filter(|p| p.blocks().iter().all(|b| connected_block(b)))
        .collect();
    parts.sort_by(|a, b| {
        a.rank()
            .cmp(&b.rank())
            .then_with(|| a.blocks().cmp(b.blocks()))
    });
    let index: HashMap<&SetPartition, usize> =
        parts.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let names: Vec<String> = parts
        .iter()
        .map(|p| {
            let original: Vec<Vec<u32>> = p
                .blocks()
                .iter()
                .map(|b| b.iter().map(|&v| order[v as usize - 1]).collect())
                .collect();
            SetPartition::new(original)
                .expect("renumbering a partition keeps it a partition")
                .to_string()
        })
        .collect();

    let mut covers = Vec::new();
    let mut labeling = EdgeLabeling::new();
    for (i, p) in parts.iter().enumerate() {
        let blocks = p.blocks();
        for bi in 0..blocks.len() {
            for bj in bi + 1..blocks.len() {
                let touching = blocks[bi]
                    .iter()
                    .any(|&v| adj_mask[v as usize] & block_mask(&blocks[bj]) != 0);
                if !touching {
                    continue;
                }
                let merged = p.merge(bi, bj);
                let j = index[&merged];
                covers.push((i, j));
                labeling.set(i, j, blocks[bi][0].max(blocks[bj][0]))?;
            }
        }
    }
    let poset = GradedPoset::from_named_covers(names, covers)?;
    Ok((poset, labeling))
}

#[derive(Serialize, Deserialize)]
struct PosetFile {
    elements: Vec<String>,
    covers: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<BTreeMap<String, u32>>,
}

/// Serialize a poset, with an optional cover labeling, to pretty JSON.
/// Label keys join the two element names with '|', so labeled posets reject
/// names containing '|'.
pub fn poset_to_json(poset: &GradedPoset, labeling: Option<&EdgeLabeling>) -> Result<String> {
    let labels = match labeling {
        None => None,
        Some(l) => {
            let mut map = BTreeMap::new();
            for ((lo, hi), label) in l.iter() {
                let (lo_name, hi_name) = (poset.name(lo), poset.name(hi));
                if lo_name.contains('|') || hi_name.contains('|') {
                    return Err(Error::Schema(format!(
                        "cannot write labels: element name {lo_name:?} or {hi_name:?} contains '|'"
                    )));
                }
                map.insert(format!("{lo_name}|{hi_name}"), label);
            }
            Some(map)
        }
    };
    let file = PosetFile {
        elements: poset.names().to_vec(),
        covers: poset
            .covers()
            .iter()
            .map(|&(lo, hi)| (poset.name(lo).to_string(), poset.name(hi).to_string()))
            .collect(),
        labels,
    };
    let mut s = serde_json::to_string_pretty(&file).map_err(|e| Error::Schema(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Parse a poset, and its cover labeling if one is present, from JSON.
pub fn poset_from_json(text: &str) -> Result<(GradedPoset, Option<EdgeLabeling>)> {
    let file: PosetFile =
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("bad poset JSON: {e}")))?;
    let index: HashMap<String, usize> = file
        .elements
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i))
        .collect();
    if index.len() != file.elements.len() {
        return Err(Error::Schema("duplicate element names".into()));
    }
    let look = |name: &str| -> Result<usize> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Schema(format!("unknown element {name:?}")))
    };
    let mut covers = Vec::with_capacity(file.covers.len());
    for (lo, hi) in &file.covers {
        covers.push((look(lo)?, look(hi)?));
    }
    let cover_set: BTreeSet<(usize, usize)> = covers.iter().copied().collect();
    let poset = GradedPoset::from_named_covers(file.elements, covers)?;

    let labeling = match file.labels {
        None => None,
        Some(map) => {
            let mut labeling = EdgeLabeling::new();
            for (key, label) in map {
                let mut interpretations = Vec::new();
                for (pos, _) in key.match_indices('|') {
                    let (lo, hi) = (&key[..pos], &key[pos + 1..]);
                    if let (Some(&i), Some(&j)) = (index.get(lo), index.get(hi)) {
                        interpretations.push((i, j));
                    }
                }
                let (lo, hi) = match interpretations.len() {
                    0 => {
                        return Err(Error::Schema(format!(
                            "label key {key:?} does not split into two element names"
                        )))
                    }
                    1 => interpretations[0],
                    n => {
                        return Err(Error::Schema(format!(
                            "label key {key:?} is ambiguous: {n} ways to split it"
                        )))
                    }
                };
                if !cover_set.contains(&(lo, hi)) {
                    return Err(Error::Schema(format!(
                        "label key {key:?} names a pair that is not a cover"
                    )));
                }
                if label == 0 {
                    return Err(Error::ZeroLabel {
                        lo: poset.name(lo).to_string(),
                        hi: poset.name(hi).to_string(),
                    });
                }
                labeling.set(lo, hi, label)?;
            }
            Some(labeling)
        }
    };
    Ok((poset, labeling))
}

pub fn save_poset(
    path: impl AsRef<Path>,
    poset: &GradedPoset,
    labeling: Option<&EdgeLabeling>,
) -> Result<()> {
    std::fs::write(path, poset_to_json(poset, labeling)?)?;
    Ok(())
}

pub fn load_poset(path: impl AsRef<Path>) -> Result<(GradedPoset, Option<EdgeLabeling>)> {
    let text = std::fs::read_to_string(path)?;
    poset_from_json(&text)
}

pub fn graph_to_json(graph: &GraphInput) -> Result<String> {
    let mut s = serde_json::to_string_pretty(graph).map_err(|e| Error::Schema(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn graph_from_json(text: &str) -> Result<GraphInput> {
    serde_json::from_str(text).map_err(|e| Error::Schema(format!("bad graph JSON: {e}")))
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<GraphInput> {
    let text = std::fs::read_to_string(path)?;
    graph_from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::partition_lattice;
    use crate::chow;
    use crate::poly::IntPolynomial;
    use crate::rlabel::{check_r_labeling, verify_r_labeling};

    fn ip(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs)
    }

    #[test]
    fn boolean_lattice_shape() {
        let (b0, l0) = boolean_lattice(0).unwrap();
        assert_eq!(b0.n_elements(), 1);
        assert_eq!(b0.rank(), 0);
        assert!(l0.is_empty());

        let (b2, l2) = boolean_lattice(2).unwrap();
        assert_eq!(b2.names(), &["{}", "{1}", "{2}", "{1,2}"]);
        assert_eq!(
            l2.iter().collect::<Vec<_>>(),
            vec![((0, 1), 1), ((0, 2), 2), ((1, 3), 2), ((2, 3), 1)]
        );

        let (b3, l3) = boolean_lattice(3).unwrap();
        assert_eq!(b3.n_elements(), 8);
        assert_eq!(b3.rank(), 3);
        assert_eq!(b3.characteristic_polynomial(), ip(&[-1, 3, -3, 1]));
        assert!(verify_r_labeling(&b3, &l3).unwrap());
    }

    #[test]
    fn boolean_chow_values() {
        let (b3, l3) = boolean_lattice(3).unwrap();
        let chow = ip(&[1, 4, 1]);
        let aug = ip(&[1, 7, 7, 1]);
        assert_eq!(chow::chow_by_chains(&b3), chow);
        assert_eq!(chow::chow_by_descents(&b3, &l3).unwrap(), chow);
        assert_eq!(chow::chow_by_extab(&b3).unwrap(), chow);
        assert_eq!(chow::augmented_chow_by_chains(&b3), aug);
        assert_eq!(chow::augmented_chow_by_descents(&b3, &l3).unwrap(), aug);
        assert_eq!(chow::augmented_chow_by_extab(&b3).unwrap(), aug);
    }

    #[test]
    fn uniform_matroid_small_cases() {
        let (u23, l23) = uniform_matroid_flats(2, 3).unwrap();
        assert_eq!(u23.names(), &["{}", "{1}", "{2}", "{3}", "{1,2,3}"]);
        assert_eq!(u23.rank(), 2);
        assert!(verify_r_labeling(&u23, &l23).unwrap());
        assert_eq!(
            l23.iter().collect::<Vec<_>>(),
            vec![
                ((0, 1), 1),
                ((0, 2), 2),
                ((0, 3), 3),
                ((1, 4), 2),
                ((2, 4), 1),
                ((3, 4), 1)
            ]
        );
        assert_eq!(chow::chow_by_chains(&u23), ip(&[1, 1]));
        assert_eq!(chow::augmented_chow_by_chains(&u23), ip(&[1, 4, 1]));
        assert_eq!(chow::chow_by_descents(&u23, &l23).unwrap(), ip(&[1, 1]));
        assert_eq!(
            chow::augmented_chow_by_descents(&u23, &l23).unwrap(),
            ip(&[1, 4, 1])
        );

        // k = m is the boolean lattice
        let (u33, l33) = uniform_matroid_flats(3, 3).unwrap();
        let (b3, l3) = boolean_lattice(3).unwrap();
        assert_eq!(u33, b3);
        assert_eq!(u33.rank(), 3);
        assert_eq!(l33, l3);

        // rank 0 and rank 1 degenerate cases
        let (u0, l0) = uniform_matroid_flats(0, 4).unwrap();
        assert_eq!(u0.n_elements(), 1);
        assert_eq!(u0.rank(), 0);
        assert!(l0.is_empty());
        let (u1, _) = uniform_matroid_flats(1, 4).unwrap();
        assert_eq!(u1.n_elements(), 2);
        assert_eq!(u1.names(), &["{}", "{1,2,3,4}"]);

        assert!(matches!(
            uniform_matroid_flats(3, 2).unwrap_err(),
            Error::InvalidParameter(_)
        ));
    }

    #[test]
    fn size_caps() {
        assert!(matches!(
            boolean_lattice(17).unwrap_err(),
            Error::SizeCap { max: 16, .. }
        ));
        assert!(matches!(
            uniform_matroid_flats(2, 17).unwrap_err(),
            Error::SizeCap { max: 16, .. }
        ));
        assert!(matches!(
            GraphInput::new(11, std::iter::empty()).unwrap_err(),
            Error::SizeCap { max: 10, .. }
        ));
    }

    #[test]
    fn graph_validation() {
        assert!(matches!(
            GraphInput::new(0, std::iter::empty()).unwrap_err(),
            Error::Graph(_)
        ));
        assert!(matches!(
            GraphInput::new(3, [(2, 2)]).unwrap_err(),
            Error::Graph(_)
        ));
        assert!(matches!(
            GraphInput::new(3, [(1, 4)]).unwrap_err(),
            Error::Graph(_)
        ));
        let g = GraphInput::new(3, [(3, 1), (1, 3), (2, 3)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 3), (2, 3)]);
        assert!(g.is_connected());
        let h = GraphInput::new(3, [(1, 2)]).unwrap();
        assert!(!h.is_connected());

        let k4 = GraphInput::complete(4).unwrap();
        assert_eq!(k4.n_edges(), 6);
    }

    #[test]
    fn bond_lattice_of_complete_graph_is_partition_lattice() {
        for n in 1..=4 {
            let graph = GraphInput::complete(n + 1).unwrap();
            let (bond, bond_labels) = bond_lattice(&graph).unwrap();
            let (braid, braid_labels) = partition_lattice(n).unwrap();
            assert_eq!(bond, braid, "rank {n}");
            assert_eq!(bond_labels, braid_labels, "rank {n}");
        }
    }

    #[test]
    fn bond_lattice_renumbers_awkward_vertex_orders() {
        // path 1 - 3 - 2: the merge labeling in the original numbering is
        // not an R-labeling, the BFS renumbering makes it one
        let g = GraphInput::new(3, [(1, 3), (3, 2)]).unwrap();
        let (bond, labels) = bond_lattice(&g).unwrap();
        assert_eq!(bond.n_elements(), 4);
        assert_eq!(bond.rank(), 2);
        assert!(verify_r_labeling(&bond, &labels).unwrap());
        let names: Vec<&str> = bond.names().iter().map(String::as_str).collect();
        assert!(names.contains(&"1,3/2"));
        assert!(names.contains(&"1/2,3"));
        assert_eq!(bond.name(bond.bottom()), "1/2/3");
        assert_eq!(bond.name(bond.top()), "1,2,3");
        assert_eq!(chow::chow_by_chains(&bond), ip(&[1, 1]));
    }

    #[test]
    fn bond_lattice_of_cycle() {
        // 4-cycle: chromatic polynomial (q-1)^4 + (q-1), so the lattice
        // characteristic polynomial is q^3 - 4q^2 + 6q - 3
        let g = GraphInput::new(4, [(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let (bond, labels) = bond_lattice(&g).unwrap();
        assert_eq!(bond.rank(), 3);
        assert_eq!(bond.n_elements(), 1 + 4 + (4 + 2) + 1);
        assert_eq!(bond.characteristic_polynomial(), ip(&[-3, 6, -4, 1]));

        // no vertex numbering makes max-of-min an R-labeling on a 4-cycle:
        // building the block of the three vertices other than the root needs
        // its two smallest vertices adjacent, for all three non-root triples
        let v = check_r_labeling(&bond, &labels).unwrap().unwrap();
        assert_eq!(v.increasing_chains, 0);
        assert_eq!(bond.rank_of(v.upper) - bond.rank_of(v.lower), 2);

        // labeling-independent methods still agree
        assert_eq!(
            chow::chow_by_chains(&bond),
            chow::chow_by_extab(&bond).unwrap()
        );
        assert_eq!(
            chow::augmented_chow_by_chains(&bond),
            chow::augmented_chow_by_extab(&bond).unwrap()
        );
    }

    #[test]
    fn bond_lattice_rejects_disconnected() {
        let g = GraphInput::new(3, [(1, 2)]).unwrap();
        assert!(matches!(bond_lattice(&g).unwrap_err(), Error::Graph(_)));
    }

    #[test]
    fn poset_json_round_trip() {
        let (p, l) = partition_lattice(2).unwrap();
        let json = poset_to_json(&p, Some(&l)).unwrap();
        let (p2, l2) = poset_from_json(&json).unwrap();
        assert_eq!(p, p2);
        assert_eq!(Some(l), l2);

        let json = poset_to_json(&p, None).unwrap();
        let (p3, l3) = poset_from_json(&json).unwrap();
        assert_eq!(p, p3);
        assert_eq!(l3, None);
    }

    #[test]
    fn poset_json_field_shapes() {
        let (p, l) = boolean_lattice(1).unwrap();
        let json = poset_to_json(&p, Some(&l)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["elements"], serde_json::json!(["{}", "{1}"]));
        assert_eq!(value["covers"], serde_json::json!([["{}", "{1}"]]));
        assert_eq!(value["labels"], serde_json::json!({"{}|{1}": 1}));
    }

    #[test]
    fn poset_json_rejects_bad_input() {
        // unknown element in a cover
        let text = r#"{"elements": ["a", "b"], "covers": [["a", "c"]]}"#;
        assert!(matches!(
            poset_from_json(text).unwrap_err(),
            Error::Schema(_)
        ));

        // duplicate names
        let text = r#"{"elements": ["a", "a"], "covers": []}"#;
        assert!(matches!(
            poset_from_json(text).unwrap_err(),
            Error::Schema(_)
        ));

        // label on a pair that is not a cover
        let text = r#"{
            "elements": ["a", "b", "c"],
            "covers": [["a", "b"], ["b", "c"]],
            "labels": {"a|c": 1}
        }"#;
        assert!(matches!(
            poset_from_json(text).unwrap_err(),
            Error::Schema(_)
        ));

        // ambiguous label key
        let text = r#"{
            "elements": ["a", "a|a", "a|a|a"],
            "covers": [["a", "a|a"], ["a|a", "a|a|a"]],
            "labels": {"a|a|a|a|a": 1}
        }"#;
        let err = poset_from_json(text).unwrap_err();
        assert!(matches!(err, Error::Schema(_)), "{err}");
        assert!(err.to_string().contains("ambiguous"));

        // zero label
        let text = r#"{
            "elements": ["a", "b"],
            "covers": [["a", "b"]],
            "labels": {"a|b": 0}
        }"#;
        assert!(matches!(
            poset_from_json(text).unwrap_err(),
            Error::ZeroLabel { .. }
        ));

        // label key that never splits into known names
        let text = r#"{
            "elements": ["a", "b"],
            "covers": [["a", "b"]],
            "labels": {"a-b": 1}
        }"#;
        assert!(matches!(
            poset_from_json(text).unwrap_err(),
            Error::Schema(_)
        ));
    }

    #[test]
    fn saving_labels_rejects_pipe_in_names() {
        let p =
            GradedPoset::from_named_covers(vec!["lo|w".into(), "hi".into()], vec![(0, 1)]).unwrap();
        let mut l = EdgeLabeling::new();
        l.set(0, 1, 1).unwrap();
        assert!(matches!(
            poset_to_json(&p, Some(&l)).unwrap_err(),
            Error::Schema(_)
        ));
        // unlabeled save is fine
        assert!(poset_to_json(&p, None).is_ok());
    }

    #[test]
    fn partial_labelings_survive_round_trips() {
        let (p, full) = boolean_lattice(2).unwrap();
        let mut partial = EdgeLabeling::new();
        let ((lo, hi), label) = full.iter().next().unwrap();
        partial.set(lo, hi, label).unwrap();
        let json = poset_to_json(&p, Some(&partial)).unwrap();
        let (_, reloaded) = poset_from_json(&json).unwrap();
        assert_eq!(reloaded, Some(partial));
    }

    #[test]
    fn graph_json_round_trip() {
        let g = GraphInput::new(4, [(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let json = graph_to_json(&g).unwrap();
        let g2 = graph_from_json(&json).unwrap();
        assert_eq!(g, g2);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["vertices"], serde_json::json!(4));
        assert_eq!(value["edges"][0], serde_json::json!([1, 2]));

        assert!(matches!(
            graph_from_json(r#"{"vertices": 2, "edges": [[1, 1]]}"#).unwrap_err(),
            Error::Schema(_)
        ));
    }
}
