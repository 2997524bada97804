use std::sync::Arc;

use super::{GraphParams, PolyError, VarId};

/// Limits on exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarietyCap {
    /// Largest `n_G · n_H`.
    pub max_vertices: usize,
    /// Largest `n_G · n_H + #free edges`, the log₂ of the candidate count.
    pub max_candidate_bits: usize,
}

impl Default for VarietyCap {
    fn default() -> Self {
        VarietyCap { max_vertices: 12, max_candidate_bits: 24 }
    }
}

#[derive(Debug)]
pub struct VarietyLayout {
    pub params: GraphParams,
    pub free_edges: Vec<VarId>,
}

impl VarietyLayout {
    fn vertex_bit(&self, g: usize, h: usize) -> usize {
        (g - 1) * self.params.n_h + (h - 1)
    }

    fn adjacent_g(&self, edge_mask: u64, a: usize, b: usize) -> bool {
        a == 1 || b == 1 || self.edge_bit(edge_mask, VarId::edge_g(a, b))
    }

    fn adjacent_h(&self, edge_mask: u64, a: usize, b: usize) -> bool {
        a == 1 || b == 1 || self.edge_bit(edge_mask, VarId::edge_h(a, b))
    }

    fn edge_bit(&self, edge_mask: u64, e: VarId) -> bool {
        let i = self.free_edges.iter().position(|&f| f == e).expect("free edge");
        edge_mask >> i & 1 == 1
    }

    /// Closed neighbourhood of every vertex of G□H as a bitmask.
    fn neighbourhoods(&self, edge_mask: u64) -> Vec<u64> {
        let p = &self.params;
        p.vertices()
            .map(|(g, h)| {
                let mut m = 1u64 << self.vertex_bit(g, h);
                for g2 in (1..=p.n_g).filter(|&g2| g2 != g && self.adjacent_g(edge_mask, g, g2)) {
                    m |= 1 << self.vertex_bit(g2, h);
                }
                for h2 in (1..=p.n_h).filter(|&h2| h2 != h && self.adjacent_h(edge_mask, h, h2)) {
                    m |= 1 << self.vertex_bit(g, h2);
                }
                m
            })
            .collect()
    }
}

/// A 0/1 point of the variety: a free-edge assignment and a dominating set.
#[derive(Clone, Debug)]
pub struct VarietyPoint {
    pub x_mask: u64,
    pub edge_mask: u64,
    layout: Arc<VarietyLayout>,
}

impl VarietyPoint {
    pub fn x(&self, g: usize, h: usize) -> bool {
        self.x_mask >> self.layout.vertex_bit(g, h) & 1 == 1
    }

    pub fn value(&self, v: VarId) -> bool {
        match v {
            VarId::Vertex(g, h) => self.x(g as usize, h as usize),
            VarId::EdgeG(a, b) => self.layout.adjacent_g(self.edge_mask, a as usize, b as usize),
            VarId::EdgeH(a, b) => self.layout.adjacent_h(self.edge_mask, a as usize, b as usize),
        }
    }

    pub fn num_x(&self) -> u32 {
        self.x_mask.count_ones()
    }
}

/// Lazy enumeration of the variety, in order of `(edge_mask, x_mask)`.
pub struct VarietyIter {
    layout: Arc<VarietyLayout>,
    nbhd: Vec<u64>,
    edge_mask: u64,
    x_mask: u64,
    n_vertices: usize,
    done: bool,
}

pub fn enumerate_variety(params: &GraphParams, cap: &VarietyCap) -> Result<VarietyIter, PolyError> {
    let n = params.n_g * params.n_h;
    let free_edges = params.free_edges();
    if n > cap.max_vertices || n + free_edges.len() > cap.max_candidate_bits {
        return Err(PolyError::TooLarge(format!(
            "variety of ({}, {}) has 2^{} candidates over {n} vertices; cap is {} vertices, 2^{} candidates",
            params.n_g,
            params.n_h,
            n + free_edges.len(),
            cap.max_vertices,
            cap.max_candidate_bits
        )));
    }
    let layout = Arc::new(VarietyLayout { params: *params, free_edges });
    let nbhd = layout.neighbourhoods(0);
    Ok(VarietyIter { layout, nbhd, edge_mask: 0, x_mask: 0, n_vertices: n, done: false })
}

impl VarietyIter {
    /// Position of the next candidate; pass it to [`VarietyIter::starting_at`] to resume.
    pub fn position(&self) -> u64 {
        self.edge_mask << self.n_vertices | self.x_mask
    }

    pub fn starting_at(mut self, index: u64) -> Self {
        self.edge_mask = index >> self.n_vertices;
        self.x_mask = index & ((1u64 << self.n_vertices) - 1);
        self.done = self.edge_mask >> self.layout.free_edges.len() != 0;
        if !self.done {
            self.nbhd = self.layout.neighbourhoods(self.edge_mask);
        }
        self
    }
}

impl Iterator for VarietyIter {
    type Item = VarietyPoint;

    fn next(&mut self) -> Option<VarietyPoint> {
        while !self.done {
            let x = self.x_mask;
            let e = self.edge_mask;
            let dominating = self.nbhd.iter().all(|&m| m & x != 0);
            self.x_mask += 1;
            if self.x_mask >> self.n_vertices != 0 {
                self.x_mask = 0;
                self.edge_mask += 1;
                if self.edge_mask >> self.layout.free_edges.len() != 0 {
                    self.done = true;
                } else {
                    self.nbhd = self.layout.neighbourhoods(self.edge_mask);
                }
            }
            if dominating {
                return Some(VarietyPoint { x_mask: x, edge_mask: e, layout: self.layout.clone() });
            }
        }
        None
    }
}

/// Dominating sets of K_{n_G} □ K_{n_H} as vertex bitmasks (bit `(g−1)·n_H + h−1`).
///
/// This is the projection of the variety onto the vertex variables: a set
/// dominating some G□H also dominates the complete product, and the complete
/// graphs themselves satisfy the dominator constraints.
pub fn enumerate_x_projection(params: &GraphParams, max_vertices: usize) -> Result<impl Iterator<Item = u64>, PolyError> {
    let n = params.n_g * params.n_h;
    if n > max_vertices || n >= 64 {
        return Err(PolyError::TooLarge(format!("x-projection of ({}, {}) has 2^{n} candidates", params.n_g, params.n_h)));
    }
    let (ng, nh) = (params.n_g, params.n_h);
    let row = |g: usize| ((1u64 << nh) - 1) << (g * nh);
    let col = |h: usize| (0..ng).fold(0u64, |m, g| m | 1 << (g * nh + h));
    let cross: Vec<u64> = (0..ng).flat_map(|g| (0..nh).map(move |h| (g, h))).map(|(g, h)| row(g) | col(h)).collect();
    Ok((0..1u64 << n).filter(move |&x| cross.iter().all(|&c| c & x != 0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_has_eleven_points() {
        let p = GraphParams::new(2, 2).unwrap();
        assert_eq!(enumerate_variety(&p, &VarietyCap::default()).unwrap().count(), 11);
        assert_eq!(enumerate_x_projection(&p, 20).unwrap().count(), 11);
    }

    #[test]
    fn restart_matches_suffix() {
        let p = GraphParams::new(3, 2).unwrap();
        let all: Vec<(u64, u64)> =
            enumerate_variety(&p, &VarietyCap::default()).unwrap().map(|q| (q.edge_mask, q.x_mask)).collect();
        let mut it = enumerate_variety(&p, &VarietyCap::default()).unwrap();
        for _ in 0..17 {
            it.next();
        }
        let pos = it.position();
        let rest: Vec<(u64, u64)> = enumerate_variety(&p, &VarietyCap::default())
            .unwrap()
            .starting_at(pos)
            .map(|q| (q.edge_mask, q.x_mask))
            .collect();
        assert_eq!(rest, all[17..]);
    }

    #[test]
    fn cap_is_enforced() {
        let p = GraphParams::new(4, 4).unwrap();
        assert!(enumerate_variety(&p, &VarietyCap::default()).is_err());
    }
}
