//! Permutation-module shapes `A(F)_p = sum_t Z_p[G/H_t]^{m_t}` and the rank
//! data they determine.

use std::fmt;

use crate::error::{Error, Result};
use crate::groupring::{Character, CyclicGroup};

/// Multiplicities `(m_0, ..., m_n)` of the permutation summands `Z_p[G/H_t]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermShape {
    group: CyclicGroup,
    m: Vec<u64>,
}

/// Ranks `r_t = rk A(F^{H_t})`, so `r_0` is the rank over the base and `r_n` over the top field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankVector(pub Vec<u64>);

impl PermShape {
    pub fn new(group: CyclicGroup, m: Vec<u64>) -> Result<Self> {
        if m.len() != group.n() as usize + 1 {
            return Err(Error::Inconsistent(format!(
                "shape has {} entries, expected n + 1 = {}",
                m.len(),
                group.n() + 1
            )));
        }
        Ok(PermShape { group, m })
    }

    pub fn group(&self) -> CyclicGroup {
        self.group
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.m
    }

    pub fn m(&self, t: u32) -> u64 {
        self.m[t as usize]
    }

    /// Total number of generators `sum_t m_t`.
    pub fn size(&self) -> usize {
        self.m.iter().sum::<u64>() as usize
    }

    /// Point indices `(t, j)`, `0 <= j < m_t`, in lexicographic order.
    pub fn indices(&self) -> Vec<(u32, usize)> {
        (0..=self.group.n())
            .flat_map(|t| (0..self.m[t as usize] as usize).map(move |j| (t, j)))
            .collect()
    }

    /// `h = sum_{t<n} m_t`.
    pub fn h(&self) -> u32 {
        self.m[..self.group.n() as usize].iter().sum::<u64>() as u32
    }

    /// `max { t < n : m_t != 0 }`.
    pub fn t0(&self) -> Option<u32> {
        (0..self.group.n()).rev().find(|&t| self.m[t as usize] != 0)
    }

    /// True when `A(F)_p` is free over `Z_p[G]` (no summands below the top level),
    /// equivalently when `rk A(F^J) = |G/J| rk A(k)` for every `J`.
    pub fn is_projective(&self) -> bool {
        self.h() == 0
    }

    /// `b_psi = sum_{s < t_psi} p^s m_s`.
    pub fn b_psi(&self, psi: &Character) -> u64 {
        (0..psi.level()).map(|s| self.group.p().pow(s) * self.m[s as usize]).sum()
    }
}

impl fmt::Display for PermShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.m.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `r_t = sum_{s<t} p^s m_s + p^t sum_{s>=t} m_s`.
pub fn ranks_from_shape(shape: &PermShape) -> RankVector {
    let p = shape.group.p();
    let n = shape.group.n() as usize;
    let r = (0..=n)
        .map(|t| {
            let low: u64 = (0..t).map(|s| p.pow(s as u32) * shape.m[s]).sum();
            let high: u64 = shape.m[t..].iter().sum();
            low + p.pow(t as u32) * high
        })
        .collect();
    RankVector(r)
}

/// Inverts [`ranks_from_shape`]; fails with the first level at which the
/// multiplicities stop being nonnegative integers.
pub fn shape_from_ranks(group: CyclicGroup, ranks: &RankVector) -> Result<PermShape> {
    let r = &ranks.0;
    let n = group.n() as usize;
    let p = group.p() as i128;
    if r.len() != n + 1 {
        return Err(Error::Inconsistent(format!("rank vector has {} entries, expected {}", r.len(), n + 1)));
    }
    // S_t = sum_{s>=t} m_s satisfies r_{t+1} - r_t = p^t (p - 1) S_{t+1}
    let mut tails = vec![r[0] as i128];
    for t in 0..n {
        let diff = r[t + 1] as i128 - r[t] as i128;
        let step = p.pow(t as u32) * (p - 1);
        if diff % step != 0 {
            return Err(Error::NotPermutationShape {
                level: t + 1,
                reason: format!("r_{} - r_{} = {diff} is not divisible by {step}", t + 1, t),
            });
        }
        tails.push(diff / step);
    }
    let mut m = Vec::with_capacity(n + 1);
    for t in 0..=n {
        let mt = if t < n { tails[t] - tails[t + 1] } else { tails[n] };
        if mt < 0 {
            return Err(Error::NotPermutationShape { level: t, reason: format!("m_{t} = {mt} is negative") });
        }
        m.push(mt as u64);
    }
    PermShape::new(group, m)
}

/// Ranks from per-character orders of vanishing: `r_t = sum_{t_psi <= t} r_psi`.
/// `orders[j]` is the order at `psi_j`.
pub fn ranks_from_orders(group: CyclicGroup, orders: &[u64]) -> Result<RankVector> {
    if orders.len() as u64 != group.order() {
        return Err(Error::Inconsistent(format!(
            "{} orders of vanishing supplied for {} characters",
            orders.len(),
            group.order()
        )));
    }
    let r = (0..=group.n())
        .map(|t| group.characters().filter(|c| c.level() <= t).map(|c| orders[c.index() as usize]).sum())
        .collect();
    Ok(RankVector(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(p: u64, m: &[u64]) -> PermShape {
        let g = CyclicGroup::new(p, m.len() as u32 - 1).unwrap();
        PermShape::new(g, m.to_vec()).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(ranks_from_shape(&shape(3, &[1, 1, 0])).0, vec![2, 4, 4]);
        assert_eq!(ranks_from_shape(&shape(5, &[3, 0, 0])).0, vec![3, 3, 3]);
        assert_eq!(ranks_from_shape(&shape(3, &[0, 0, 0, 1])).0, vec![1, 3, 9, 27]);
    }

    #[test]
    fn inversion() {
        let c7 = CyclicGroup::new(7, 1).unwrap();
        assert_eq!(shape_from_ranks(c7, &RankVector(vec![1, 7])).unwrap().multiplicities(), &[0, 1]);
        let c9 = CyclicGroup::new(3, 2).unwrap();
        assert_eq!(shape_from_ranks(c9, &RankVector(vec![2, 2, 2])).unwrap().multiplicities(), &[2, 0, 0]);
        assert_eq!(shape_from_ranks(c9, &RankVector(vec![2, 4, 4])).unwrap().multiplicities(), &[1, 1, 0]);
        match shape_from_ranks(c9, &RankVector(vec![1, 2, 4])) {
            Err(Error::NotPermutationShape { level, .. }) => assert_eq!(level, 1),
            other => panic!("unexpected {other:?}"),
        }
        match shape_from_ranks(c9, &RankVector(vec![3, 3, 9])) {
            Err(Error::NotPermutationShape { level, .. }) => assert_eq!(level, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn derived_invariants() {
        let s = shape(3, &[2, 0, 0]);
        let g = s.group();
        assert_eq!(s.b_psi(&g.character(1)), 2);
        assert_eq!(s.b_psi(&g.character(0)), 0);
        assert_eq!(s.h(), 2);
        assert_eq!(s.t0(), Some(0));
        let s = shape(3, &[1, 1, 0]);
        assert_eq!(s.b_psi(&g.character(1)), 4);
        assert_eq!(s.b_psi(&g.character(3)), 1);
        assert_eq!(s.t0(), Some(1));
        assert_eq!(shape(7, &[0, 1]).t0(), None);
        assert!(shape(7, &[0, 1]).is_projective());
    }

    #[test]
    fn orders_of_vanishing() {
        let g = CyclicGroup::new(3, 2).unwrap();
        let orders = [2, 0, 0, 1, 0, 0, 1, 0, 0];
        assert_eq!(ranks_from_orders(g, &orders).unwrap().0, vec![2, 4, 4]);
    }
}
