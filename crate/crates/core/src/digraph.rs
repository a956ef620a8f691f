//! Digraphs with a vertex-transitive group: orbital digraphs, local actions,
//! strong connectivity and the stabilizer series along a vertex ordering.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct Digraph {
    pub vertex_count: usize,
    /// Sorted, without duplicates.
    pub arcs: Vec<(u32, u32)>,
    pub group: Option<PermGroup>,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct DigraphJson {
    vertices: usize,
    arcs: Vec<(u32, u32)>,
}

impl Digraph {
    pub fn new(vertex_count: usize, arcs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let arcs: BTreeSet<(u32, u32)> = arcs.into_iter().collect();
        let mut out_adj = vec![Vec::new(); vertex_count];
        let mut in_adj = vec![Vec::new(); vertex_count];
        for &(u, v) in &arcs {
            for x in [u, v] {
                if x as usize >= vertex_count {
                    return Err(Error::InvalidPoint {
                        point: x as usize,
                        degree: vertex_count,
                    });
                }
            }
            out_adj[u as usize].push(v);
            in_adj[v as usize].push(u);
        }
        Ok(Digraph {
            vertex_count,
            arcs: arcs.into_iter().collect(),
            group: None,
            out_adj,
            in_adj,
        })
    }

    /// Attaches an acting group after checking that it preserves the arcs.
    pub fn with_group(mut self, g: PermGroup) -> Result<Self> {
        if g.degree() != self.vertex_count {
            return Err(Error::DegreeMismatch {
                expected: self.vertex_count,
                found: g.degree(),
            });
        }
        let set: HashSet<(u32, u32)> = self.arcs.iter().copied().collect();
        for x in g.generators() {
            if self.arcs.iter().any(|&(u, v)| !set.contains(&(x.image(u), x.image(v)))) {
                return Err(Error::Precondition("group does not preserve the arc set".into()));
            }
        }
        self.group = Some(g);
        Ok(self)
    }

    pub fn out_neighbours(&self, v: u32) -> &[u32] {
        &self.out_adj[v as usize]
    }

    pub fn in_neighbours(&self, v: u32) -> &[u32] {
        &self.in_adj[v as usize]
    }

    pub fn neighbours(&self, v: u32, dir: Direction) -> &[u32] {
        match dir {
            Direction::In => self.in_neighbours(v),
            Direction::Out => self.out_neighbours(v),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n");
        for v in 0..self.vertex_count {
            let _ = writeln!(s, "  {v};");
        }
        for &(u, v) in &self.arcs {
            let _ = writeln!(s, "  {u} -> {v};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DigraphJson {
            vertices: self.vertex_count,
            arcs: self.arcs.clone(),
        })
        .expect("serializable")
    }

    /// Reads `{"vertices": n, "arcs": [[u, v], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let d: DigraphJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            position: e.column(),
            message: e.to_string(),
        })?;
        Digraph::new(d.vertices, d.arcs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

/// The digraph whose arcs form the orbit of `(u, v)` under `g`.
pub fn orbital_digraph(g: &PermGroup, u: u32, v: u32) -> Result<Digraph> {
    let n = g.degree();
    if u as usize >= n || v as usize >= n {
        return Err(Error::InvalidPoint {
            point: u.max(v) as usize,
            degree: n,
        });
    }
    if u == v {
        return Err(Error::Precondition("orbital digraphs here have no loops".into()));
    }
    if !g.is_transitive() {
        return Err(Error::Precondition("orbital digraph needs a transitive group".into()));
    }
    let mut seen: HashSet<(u32, u32)> = HashSet::from([(u, v)]);
    let mut queue = VecDeque::from([(u, v)]);
    while let Some((a, b)) = queue.pop_front() {
        for x in g.generators() {
            let next = (x.image(a), x.image(b));
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Digraph::new(n, seen)?.with_group(g.clone())
}

#[derive(Clone, Debug)]
pub struct LocalActionReport {
    pub vertex: u32,
    pub direction: Direction,
    pub neighbours: Vec<u32>,
    /// Action of the vertex stabilizer on `neighbours`, by position.
    pub induced_group: PermGroup,
}

/// Restricts each generator to `points`, which it must preserve.
pub fn induced_on(gens: &[Permutation], points: &[u32]) -> Result<PermGroup> {
    let pos: std::collections::HashMap<u32, u32> = points.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let mut out = Vec::with_capacity(gens.len());
    for x in gens {
        let images: Option<Vec<u32>> = points.iter().map(|p| pos.get(&x.image(*p)).copied()).collect();
        let images = images.ok_or_else(|| Error::Precondition("generator does not preserve the point set".into()))?;
        out.push(Permutation::from_images(images)?);
    }
    PermGroup::new(points.len(), out)
}

/// In- or out-local action at `v`, using the stabilizer of the attached group.
pub fn local_action(d: &Digraph, v: u32, dir: Direction) -> Result<LocalActionReport> {
    let g = d
        .group
        .as_ref()
        .ok_or_else(|| Error::Precondition("digraph has no group".into()))?;
    let stab = g.stabilizer(v)?;
    local_action_with_stabilizer(d, v, dir, stab.generators())
}

/// As [`local_action`] when generators of the stabilizer of `v` are known.
pub fn local_action_with_stabilizer(
    d: &Digraph,
    v: u32,
    dir: Direction,
    stabilizer: &[Permutation],
) -> Result<LocalActionReport> {
    let neighbours = d.neighbours(v, dir).to_vec();
    let induced_group = induced_on(stabilizer, &neighbours)?;
    Ok(LocalActionReport {
        vertex: v,
        direction: dir,
        neighbours,
        induced_group,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongComponents {
    pub strongly_connected: bool,
    pub weakly_connected: bool,
    /// Components in order of discovery, each sorted.
    pub components: Vec<Vec<u32>>,
}

/// Tarjan's algorithm, iterative.
pub fn strongly_connected(d: &Digraph) -> StrongComponents {
    let n = d.vertex_count;
    let mut index = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut components = Vec::new();
    let mut counter = 0u32;
    for root in 0..n as u32 {
        if index[root as usize] != u32::MAX {
            continue;
        }
        let mut call: Vec<(u32, usize)> = vec![(root, 0)];
        index[root as usize] = counter;
        low[root as usize] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if let Some(&w) = d.out_neighbours(v).get(*next) {
                *next += 1;
                if index[w as usize] == u32::MAX {
                    index[w as usize] = counter;
                    low[w as usize] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w as usize] = true;
                    call.push((w, 0));
                } else if on_stack[w as usize] {
                    low[v as usize] = low[v as usize].min(index[w as usize]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent as usize] = low[parent as usize].min(low[v as usize]);
            }
            if low[v as usize] == index[v as usize] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("nonempty");
                    on_stack[w as usize] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }
    StrongComponents {
        strongly_connected: components.len() <= 1,
        weakly_connected: weakly_connected(d),
        components,
    }
}

fn weakly_connected(d: &Digraph) -> bool {
    if d.vertex_count == 0 {
        return true;
    }
    let mut seen = vec![false; d.vertex_count];
    seen[0] = true;
    let mut queue = VecDeque::from([0u32]);
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &w in d.out_neighbours(v).iter().chain(d.in_neighbours(v)) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == d.vertex_count
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesStep {
    pub vertex: u32,
    pub order: u128,
    /// `|G_(i-1) : G_i|`.
    pub factor_order: u128,
    pub normal: bool,
    /// The image of `G_(i-1)` on the out-neighbours of `v_i` lies in the
    /// out-local action at `v_i`.
    pub image_in_local: bool,
    pub divides_local_order: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerSeries {
    pub ordering: Vec<u32>,
    pub stabilizer_order: u128,
    pub local_order: u128,
    pub steps: Vec<SeriesStep>,
    #[serde(skip)]
    pub chain: Vec<PermGroup>,
    pub verified: bool,
}

/// Orders the vertices breadth-first from 0 (out-neighbours ascending) and
/// builds `G_0 = G_(v_1)`, `G_i` the pointwise stabilizer of `v_1..v_i` and
/// their out-neighbours, stopping at the trivial group.
pub fn stabilizer_series(d: &Digraph) -> Result<StabilizerSeries> {
    let g = d
        .group
        .as_ref()
        .ok_or_else(|| Error::Precondition("digraph has no group".into()))?;
    if !strongly_connected(d).strongly_connected {
        return Err(Error::Precondition("digraph is not strongly connected".into()));
    }
    if !g.is_transitive() {
        return Err(Error::Precondition("group is not vertex-transitive".into()));
    }
    let mut ordering = vec![0u32];
    let mut seen = vec![false; d.vertex_count];
    seen[0] = true;
    let mut i = 0;
    while i < ordering.len() {
        let v = ordering[i];
        for &w in d.out_neighbours(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                ordering.push(w);
            }
        }
        i += 1;
    }
    let g0 = g.stabilizer(0)?;
    let local = local_action_with_stabilizer(d, 0, Direction::Out, g0.generators())?;
    let local_order = local.induced_group.order();
    let mut chain = vec![g0.clone()];
    let mut steps = Vec::new();
    let mut current = g0.clone();
    for &v in &ordering {
        if current.order() == 1 {
            break;
        }
        let nbrs = d.out_neighbours(v);
        let next = current.pointwise_stabilizer(nbrs)?;
        let gv = g.stabilizer(v)?;
        let local_v = induced_on(gv.generators(), nbrs)?;
        let image = induced_on(current.generators(), nbrs)?;
        let factor_order = current.order() / next.order();
        steps.push(SeriesStep {
            vertex: v,
            order: next.order(),
            factor_order,
            normal: next.is_normal_in(&current),
            image_in_local: image.is_subgroup_of(&local_v)?,
            divides_local_order: local_order % factor_order == 0,
        });
        chain.push(next.clone());
        current = next;
    }
    let verified = current.order() == 1
        && steps
            .iter()
            .all(|s| s.normal && s.image_in_local && s.divides_local_order);
    Ok(StabilizerSeries {
        ordering,
        stabilizer_order: g0.order(),
        local_order,
        steps,
        chain,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(n, gens).unwrap()
    }

    #[test]
    fn orbitals() {
        let c3 = grp(3, &["(0 1 2)"]);
        let d = orbital_digraph(&c3, 0, 1).unwrap();
        assert_eq!(d.arcs, vec![(0, 1), (1, 2), (2, 0)]);
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        assert_eq!(orbital_digraph(&s3, 0, 1).unwrap().arcs.len(), 6);
        let d4 = grp(4, &["(0 1 2 3)", "(1 3)"]);
        assert_eq!(orbital_digraph(&d4, 0, 1).unwrap().arcs.len(), 8);
        assert!(orbital_digraph(&c3, 1, 1).is_err());
        assert!(orbital_digraph(&grp(3, &["(0 1)"]), 0, 1).is_err());
    }

    #[test]
    fn local_actions() {
        let c3 = grp(3, &["(0 1 2)"]);
        let d = orbital_digraph(&c3, 0, 1).unwrap();
        let r = local_action(&d, 0, Direction::Out).unwrap();
        assert_eq!((r.induced_group.degree(), r.induced_group.order()), (1, 1));
        let s3 = grp(3, &["(0 1 2)", "(0 1)"]);
        let k3 = orbital_digraph(&s3, 0, 1).unwrap();
        let r = local_action(&k3, 0, Direction::Out).unwrap();
        assert_eq!((r.induced_group.degree(), r.induced_group.order()), (2, 2));
    }

    #[test]
    fn connectivity() {
        let c3 = orbital_digraph(&grp(3, &["(0 1 2)"]), 0, 1).unwrap();
        assert!(strongly_connected(&c3).strongly_connected);
        let arc = Digraph::new(2, [(0, 1)]).unwrap();
        let s = strongly_connected(&arc);
        assert!(!s.strongly_connected && s.weakly_connected);
        assert_eq!(s.components.len(), 2);
    }

    #[test]
    fn series() {
        let c3 = orbital_digraph(&grp(3, &["(0 1 2)"]), 0, 1).unwrap();
        let s = stabilizer_series(&c3).unwrap();
        assert!(s.verified && s.steps.is_empty());
        let k3 = orbital_digraph(&grp(3, &["(0 1 2)", "(0 1)"]), 0, 1).unwrap();
        let s = stabilizer_series(&k3).unwrap();
        assert!(s.verified && s.steps.len() <= 3);
        assert!(s.steps.iter().all(|st| 2 % st.factor_order == 0));
    }

    #[test]
    fn export_roundtrip() {
        let d = orbital_digraph(&grp(3, &["(0 1 2)"]), 0, 1).unwrap();
        assert!(d.to_dot().contains("2 -> 0;"));
        let back = Digraph::from_json(&d.to_json().to_string()).unwrap();
        assert_eq!(back.arcs, d.arcs);
    }
}
