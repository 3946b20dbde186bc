//! Equivariant regulator matrices built from height tables, and the three
//! families of character minors: `lambda_psi` (numeric), `delta_psi` and
//! `epsilon_psi` (exact).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith;
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::groupring::{char_eval, Character, GroupRingElt};
use crate::mwshape::PermShape;
use crate::numeric::{complex_det, BigComplex, Real};

/// A generator index `(level, j)`.
pub type PointIndex = (u32, usize);

/// Key of one pairing value `<sigma^tau P_row, P^t_col>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeightKey {
    pub row: PointIndex,
    pub tau: u64,
    pub col: PointIndex,
}

impl fmt::Display for HeightKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<sigma^{} P({},{}), Pt({},{})>",
            self.tau, self.row.0, self.row.1, self.col.0, self.col.1
        )
    }
}

/// Pairings `<tau P_(u,k), P^t_(t,j)>` for `tau` running over `G/H_u`.
#[derive(Clone, Debug)]
pub struct HeightTable {
    shape: PermShape,
    values: BTreeMap<HeightKey, Real>,
}

impl HeightTable {
    pub fn new(shape: PermShape) -> Self {
        HeightTable { shape, values: BTreeMap::new() }
    }

    pub fn shape(&self) -> &PermShape {
        &self.shape
    }

    pub fn insert(&mut self, row: PointIndex, tau: u64, col: PointIndex, value: Real) {
        self.values.insert(HeightKey { row, tau, col }, value);
    }

    pub fn get(&self, row: PointIndex, tau: u64, col: PointIndex) -> Option<&Real> {
        self.values.get(&HeightKey { row, tau, col })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&HeightKey, &Real)> {
        self.values.iter()
    }

    /// Every key the table must contain, in lexicographic order.
    pub fn required_keys(&self) -> Vec<HeightKey> {
        let idx = self.shape.indices();
        let p = self.shape.group().p();
        let mut keys = Vec::new();
        for &row in &idx {
            for tau in 0..p.pow(row.0) {
                for &col in &idx {
                    keys.push(HeightKey { row, tau, col });
                }
            }
        }
        keys
    }

    pub fn check_complete(&self) -> Result<()> {
        for key in self.required_keys() {
            if !self.values.contains_key(&key) {
                return Err(Error::MissingHeight(key.to_string()));
            }
        }
        for key in self.values.keys() {
            let valid = self.shape.indices().contains(&key.row)
                && self.shape.indices().contains(&key.col)
                && key.tau < self.shape.group().p().pow(key.row.0);
            if !valid {
                return Err(Error::Inconsistent(format!("height entry {key} does not match the shape")));
            }
        }
        Ok(())
    }
}

/// `R(P, P^t)` with entries in `C[G]`, each stored as its `|G|` coefficients.
#[derive(Clone, Debug)]
pub struct RegulatorMatrix {
    shape: PermShape,
    index: Vec<PointIndex>,
    entries: Vec<Vec<Vec<Real>>>,
    prec: usize,
}

/// `entry[(u,k),(t,j)] = (1/|H_u|) sum_{tau in G/H_u} <tau P_(u,k), P^t_(t,j)> tau e_{H_u}`.
pub fn build_regulator(heights: &HeightTable, prec: usize) -> Result<RegulatorMatrix> {
    heights.check_complete()?;
    let shape = heights.shape.clone();
    let group = shape.group();
    let order = group.order() as usize;
    let index = shape.indices();
    let mut entries = Vec::with_capacity(index.len());
    for &row in &index {
        let u = row.0;
        let quot = group.quotient_order(u);
        let sub = group.subgroup_order(u);
        let weight = Real::from_rational(&arith::rat(1, (sub * sub) as i64), prec);
        let mut line = Vec::with_capacity(index.len());
        for &col in &index {
            let mut coeffs = vec![Real::zero(prec); order];
            for tau in 0..quot {
                let h = heights.get(row, tau, col).expect("checked complete");
                let c = h * &weight;
                for l in 0..sub {
                    coeffs[(tau + l * quot) as usize] = c.clone();
                }
            }
            line.push(coeffs);
        }
        entries.push(line);
    }
    Ok(RegulatorMatrix { shape, index, entries, prec })
}

impl RegulatorMatrix {
    pub fn shape(&self) -> &PermShape {
        &self.shape
    }

    pub fn index(&self) -> &[PointIndex] {
        &self.index
    }

    pub fn size(&self) -> usize {
        self.index.len()
    }

    /// Group-ring coefficients of one entry.
    pub fn entry(&self, r: usize, c: usize) -> &[Real] {
        &self.entries[r][c]
    }

    /// `psi` applied to one entry.
    pub fn eval_entry(&self, r: usize, c: usize, psi: &Character) -> BigComplex {
        let mut acc = BigComplex::zero(self.prec);
        for (i, coeff) in self.entries[r][c].iter().enumerate() {
            if !coeff.is_zero() {
                acc = &acc + &psi.value_numeric(i as i64, self.prec).scale(coeff);
            }
        }
        acc
    }

    /// `psi(R)` restricted to rows and columns of level at least `t`.
    pub fn eval_minor(&self, psi: &Character, t: u32) -> Vec<Vec<BigComplex>> {
        let keep: Vec<usize> = (0..self.size()).filter(|&i| self.index[i].0 >= t).collect();
        keep.iter().map(|&r| keep.iter().map(|&c| self.eval_entry(r, c, psi)).collect()).collect()
    }

    /// Largest coefficient of `(1 - e_{H_u}) entry` over all entries.
    pub fn component_defect(&self) -> Real {
        let group = self.shape.group();
        let mut worst = Real::zero(self.prec);
        for (r, &(u, _)) in self.index.iter().enumerate() {
            let quot = group.quotient_order(u) as usize;
            let sub = group.subgroup_order(u) as usize;
            for c in 0..self.size() {
                let coeffs = &self.entries[r][c];
                for tau in 0..quot {
                    let mut avg = Real::zero(self.prec);
                    for l in 0..sub {
                        avg = &avg + &coeffs[tau + l * quot];
                    }
                    avg = &avg / &Real::from_i64(sub as i64, self.prec);
                    for l in 0..sub {
                        let d = (&coeffs[tau + l * quot] - &avg).abs();
                        if worst.lt(&d) {
                            worst = d;
                        }
                    }
                }
            }
        }
        worst
    }
}

/// Lower psi-minor `det psi(R_{t_psi})`; the empty minor is 1.
pub fn lambda_psi(reg: &RegulatorMatrix, psi: &Character) -> BigComplex {
    complex_det(reg.eval_minor(psi, psi.level()), reg.prec)
}

/// [`lambda_psi`] that rejects minors of modulus below `tol`.
pub fn lambda_psi_checked(reg: &RegulatorMatrix, psi: &Character, tol: &Real) -> Result<BigComplex> {
    let lambda = lambda_psi(reg, psi);
    let magnitude = lambda.abs();
    if magnitude.lt(tol) {
        return Err(Error::RegulatorDegenerate { j: psi.index(), magnitude: magnitude.to_decimal(6) });
    }
    Ok(lambda)
}

/// Upper psi-minor `prod_{t < t_psi} (psi(sigma)^{p^t} - 1)^{m_t}` in `Q(zeta_{p^{t_psi}})`.
pub fn delta_psi(shape: &PermShape, psi: &Character) -> CycNum {
    let m = psi.order();
    let group = shape.group();
    let mut acc = CycNum::one(m);
    for t in 0..psi.level() {
        let factor = &psi.value(group.quotient_order(t) as i64) - &CycNum::one(m);
        acc = &acc * &factor.pow(shape.m(t) as u32);
    }
    acc
}

/// The group-ring element `prod_{t<n} (sigma^{p^t} - 1)^{m_t}`, whose character
/// values are the `delta_psi`.
pub fn delta_element(shape: &PermShape) -> GroupRingElt {
    let group = shape.group();
    (0..group.n()).fold(GroupRingElt::one(group), |acc, t| {
        &acc * &GroupRingElt::sigma_power_minus_one(group, t).pow(shape.m(t) as u32)
    })
}

/// Matrix `Phi` over `Z_p[G]` indexed like the generators, rows `(t,j)` and columns `(s,i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiMatrix {
    shape: PermShape,
    index: Vec<PointIndex>,
    entries: Vec<Vec<GroupRingElt>>,
}

impl PhiMatrix {
    pub fn identity(shape: &PermShape) -> Self {
        let group = shape.group();
        let index = shape.indices();
        let entries = (0..index.len())
            .map(|r| {
                (0..index.len())
                    .map(|c| if r == c { GroupRingElt::one(group) } else { GroupRingElt::zero(group) })
                    .collect()
            })
            .collect();
        PhiMatrix { shape: shape.clone(), index, entries }
    }

    /// Validates size, p-integrality and the block shape with identity bottom-right block.
    pub fn new(shape: &PermShape, entries: Vec<Vec<GroupRingElt>>) -> Result<Self> {
        let index = shape.indices();
        let group = shape.group();
        let n = group.n();
        if entries.len() != index.len() || entries.iter().any(|r| r.len() != index.len()) {
            return Err(Error::InvalidPhi(format!("expected a {0}x{0} matrix", index.len())));
        }
        for (r, row) in entries.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if x.group() != group {
                    return Err(Error::InvalidPhi(format!("entry ({r},{c}) lives in the wrong group ring")));
                }
                if !x.is_p_integral(group.p()) {
                    return Err(Error::InvalidPhi(format!("entry ({r},{c}) = {x} is not {}-integral", group.p())));
                }
                if index[r].0 == n || index[c].0 == n {
                    let expected = if r == c { GroupRingElt::one(group) } else { GroupRingElt::zero(group) };
                    if *x != expected {
                        return Err(Error::InvalidPhi(format!(
                            "entry ({r},{c}) = {x} breaks the identity block on free summands"
                        )));
                    }
                }
            }
        }
        Ok(PhiMatrix { shape: shape.clone(), index, entries })
    }

    pub fn entries(&self) -> &[Vec<GroupRingElt>] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == PhiMatrix::identity(&self.shape)
    }

    /// Checks that every `epsilon_psi` is a unit at the prime above `p`.
    pub fn validate_units(&self) -> Result<()> {
        let group = self.shape.group();
        for psi in group.characters() {
            let eps = epsilon_psi(self, &psi)?;
            match eps.valuation_above_p(group.p())? {
                crate::cyclotomic::Valuation::Finite(0) => {}
                v => {
                    return Err(Error::InvalidPhi(format!(
                        "epsilon at {psi} = {eps} has valuation {v}, not a unit"
                    )))
                }
            }
        }
        Ok(())
    }
}

/// Lower psi-minor `det psi(Phi_{t_psi})`, exact.
pub fn epsilon_psi(phi: &PhiMatrix, psi: &Character) -> Result<CycNum> {
    let t = psi.level();
    let keep: Vec<usize> = (0..phi.index.len()).filter(|&i| phi.index[i].0 >= t).collect();
    let mut m = Vec::with_capacity(keep.len());
    for &r in &keep {
        let mut row = Vec::with_capacity(keep.len());
        for &c in &keep {
            row.push(char_eval(&phi.entries[r][c], psi)?);
        }
        m.push(row);
    }
    Ok(cyc_det(m, psi.order()))
}

/// Exact determinant over a cyclotomic field by fraction-free pivoting.
pub fn cyc_det(mut a: Vec<Vec<CycNum>>, modulus: u64) -> CycNum {
    let n = a.len();
    let mut det = CycNum::one(modulus);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return CycNum::zero(modulus);
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].inv().expect("nonzero pivot");
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] * &inv;
            for k in col..n {
                let sub = &factor * &a[col][k];
                a[row][k] = &a[row][k] - &sub;
            }
        }
    }
    det
}

/// A G-invariant pairing on the permutation lattice `sum_t Z[G/H_t]^{m_t}`,
/// used to produce internally consistent height tables.
///
/// Coordinates run over the basis `sigma^i e_(t,j)`, `0 <= i < p^t`.
#[derive(Clone, Debug)]
pub struct SyntheticLattice {
    shape: PermShape,
    offsets: Vec<usize>,
    gram: Vec<Vec<BigRational>>,
}

impl SyntheticLattice {
    /// Averages the form `A^T A + I` over `G` for the given integer matrix `a`
    /// (square, of the lattice dimension).
    pub fn from_matrix(shape: &PermShape, a: &[Vec<i64>]) -> Result<Self> {
        let group = shape.group();
        let mut offsets = Vec::new();
        let mut dim = 0usize;
        for (t, _) in shape.indices() {
            offsets.push(dim);
            dim += group.quotient_order(t) as usize;
        }
        if a.len() != dim || a.iter().any(|r| r.len() != dim) {
            return Err(Error::Inconsistent(format!("synthetic lattice needs a {dim}x{dim} matrix")));
        }
        let base: Vec<Vec<i64>> = (0..dim)
            .map(|i| {
                (0..dim).map(|j| (0..dim).map(|k| a[k][i] * a[k][j]).sum::<i64>() + i64::from(i == j)).collect()
            })
            .collect();
        let lattice = SyntheticLattice { shape: shape.clone(), offsets, gram: Vec::new() };
        let mut gram = vec![vec![BigRational::zero(); dim]; dim];
        for g in 0..group.order() {
            let perm: Vec<usize> = (0..dim).map(|i| lattice.act_coord(i, g)).collect();
            for i in 0..dim {
                for j in 0..dim {
                    gram[i][j] += arith::int(base[perm[i]][perm[j]]);
                }
            }
        }
        Ok(SyntheticLattice { gram, ..lattice })
    }

    pub fn dimension(&self) -> usize {
        self.gram.len()
    }

    fn locate(&self, coord: usize) -> (usize, usize) {
        let block = self.offsets.iter().rposition(|&o| o <= coord).expect("offset zero exists");
        (block, coord - self.offsets[block])
    }

    fn act_coord(&self, coord: usize, g: u64) -> usize {
        let (block, i) = self.locate(coord);
        let t = self.shape.indices()[block].0;
        let quot = self.shape.group().quotient_order(t) as usize;
        self.offsets[block] + (i + g as usize) % quot
    }

    /// Coordinates of the generator `e_(t,j)`.
    pub fn generator(&self, idx: PointIndex) -> Vec<i64> {
        let block = self.shape.indices().iter().position(|&x| x == idx).expect("valid index");
        let mut v = vec![0; self.dimension()];
        v[self.offsets[block]] = 1;
        v
    }

    /// `sigma^g x`.
    pub fn act(&self, x: &[i64], g: u64) -> Vec<i64> {
        let mut out = vec![0; x.len()];
        for (i, &c) in x.iter().enumerate() {
            out[self.act_coord(i, g)] += c;
        }
        out
    }

    pub fn pairing(&self, x: &[i64], y: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    acc += &self.gram[i][j] * arith::int(a * b);
                }
            }
        }
        acc
    }

    /// Exact height table for chosen points; `points[k]` and `dual[k]` must be
    /// fixed by `H_t` where `t` is the level of the k-th generator.
    pub fn height_table(&self, points: &[Vec<i64>], dual: &[Vec<i64>]) -> Vec<(HeightKey, BigRational)> {
        let idx = self.shape.indices();
        let p = self.shape.group().p();
        let mut out = Vec::new();
        for (r, &row) in idx.iter().enumerate() {
            for tau in 0..p.pow(row.0) {
                let moved = self.act(&points[r], tau);
                for (c, &col) in idx.iter().enumerate() {
                    out.push((HeightKey { row, tau, col }, self.pairing(&moved, &dual[c])));
                }
            }
        }
        out
    }

    /// Height table for the standard generators on both sides.
    pub fn standard_heights(&self) -> Vec<(HeightKey, BigRational)> {
        let gens: Vec<Vec<i64>> = self.shape.indices().into_iter().map(|i| self.generator(i)).collect();
        self.height_table(&gens, &gens)
    }
}

/// Loads exact heights into a [`HeightTable`].
pub fn table_from_exact(shape: &PermShape, exact: &[(HeightKey, BigRational)], prec: usize) -> HeightTable {
    let mut table = HeightTable::new(shape.clone());
    for (k, v) in exact {
        table.insert(k.row, k.tau, k.col, Real::from_rational(v, prec));
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Valuation;
    use crate::groupring::CyclicGroup;
    use crate::numeric::DEFAULT_PRECISION;

    const PREC: usize = DEFAULT_PRECISION;

    fn shape(p: u64, m: &[u64]) -> PermShape {
        PermShape::new(CyclicGroup::new(p, m.len() as u32 - 1).unwrap(), m.to_vec()).unwrap()
    }

    fn lattice(s: &PermShape, seed: i64) -> SyntheticLattice {
        let g = s.group();
        let dim: usize = s.indices().iter().map(|&(t, _)| g.quotient_order(t) as usize).sum();
        let a: Vec<Vec<i64>> = (0..dim)
            .map(|i| (0..dim).map(|j| ((i as i64 * 7 + j as i64 * 3 + seed) % 5) - 2).collect())
            .collect();
        SyntheticLattice::from_matrix(s, &a).unwrap()
    }

    #[test]
    fn trivial_group_is_gram_matrix() {
        let s = PermShape::new(CyclicGroup::new(3, 0).unwrap(), vec![2]).unwrap();
        let lat = lattice(&s, 1);
        let table = table_from_exact(&s, &lat.standard_heights(), PREC);
        let reg = build_regulator(&table, PREC).unwrap();
        let psi = s.group().character(0);
        let g00 = lat.pairing(&lat.generator((0, 0)), &lat.generator((0, 0)));
        let g01 = lat.pairing(&lat.generator((0, 0)), &lat.generator((0, 1)));
        let g11 = lat.pairing(&lat.generator((0, 1)), &lat.generator((0, 1)));
        let det = &g00 * &g11 - &g01 * &g01;
        let lam = lambda_psi(&reg, &psi);
        assert!((&lam.re - &Real::from_rational(&det, PREC)).abs().to_f64() < 1e-40);
    }

    #[test]
    fn free_rank_one_entry() {
        let s = shape(7, &[0, 1]);
        let lat = lattice(&s, 2);
        let exact = lat.standard_heights();
        let table = table_from_exact(&s, &exact, PREC);
        let reg = build_regulator(&table, PREC).unwrap();
        for (i, c) in reg.entry(0, 0).iter().enumerate() {
            let h = table.get((1, 0), i as u64, (1, 0)).unwrap();
            assert!((c - h).abs().is_zero());
        }
        // lambda_psi = sum_tau <tau R, R> psi(tau)
        let g = s.group();
        for psi in g.characters() {
            let mut direct = BigComplex::zero(PREC);
            for tau in 0..7 {
                let h = table.get((1, 0), tau, (1, 0)).unwrap();
                direct = &direct + &psi.value_numeric(tau as i64, PREC).scale(h);
            }
            assert!((&direct - &lambda_psi(&reg, &psi)).abs().to_f64() < 1e-40);
        }
        assert!(reg.component_defect().is_zero());
    }

    #[test]
    fn empty_minor_is_one() {
        let s = shape(3, &[2, 0, 0]);
        let lat = lattice(&s, 3);
        let reg = build_regulator(&table_from_exact(&s, &lat.standard_heights(), PREC), PREC).unwrap();
        let lam = lambda_psi(&reg, &s.group().character(1));
        assert_eq!(lam.re.to_f64(), 1.0);
        assert!(lam.im.is_zero());
    }

    #[test]
    fn conjugate_characters_give_conjugate_minors() {
        let s = shape(3, &[1, 1, 1]);
        let lat = lattice(&s, 4);
        let reg = build_regulator(&table_from_exact(&s, &lat.standard_heights(), PREC), PREC).unwrap();
        for psi in s.group().characters() {
            let a = lambda_psi(&reg, &psi);
            let b = lambda_psi(&reg, &psi.contragredient());
            assert!((&a.conj() - &b).abs().to_f64() < 1e-40);
        }
        assert!(reg.component_defect().to_f64() < 1e-50);
    }

    #[test]
    fn missing_heights_are_reported() {
        let s = shape(7, &[0, 1]);
        let mut table = HeightTable::new(s);
        table.insert((1, 0), 0, (1, 0), Real::one(PREC));
        assert!(matches!(build_regulator(&table, PREC), Err(Error::MissingHeight(_))));
    }

    #[test]
    fn delta_values() {
        let s = shape(3, &[2, 0, 0]);
        let g = s.group();
        assert_eq!(delta_psi(&s, &g.character(0)), CycNum::one(1));
        let z = CycNum::zeta_pow(9, 1);
        let expected = (&z - &CycNum::one(9)).pow(2);
        assert_eq!(delta_psi(&s, &g.character(1)), expected);
        for psi in g.characters() {
            assert_eq!(
                delta_psi(&s, &psi).valuation_above_p(3).unwrap(),
                Valuation::Finite(s.b_psi(&psi) as i64)
            );
            if psi.level() == g.n() {
                assert_eq!(char_eval(&delta_element(&s), &psi).unwrap(), delta_psi(&s, &psi));
            }
        }
    }

    #[test]
    fn phi_minors() {
        let s = shape(3, &[1, 1, 1]);
        let g = s.group();
        let id = PhiMatrix::identity(&s);
        for psi in g.characters() {
            assert_eq!(epsilon_psi(&id, &psi).unwrap(), CycNum::one(psi.order()));
        }
        id.validate_units().unwrap();
        let one = GroupRingElt::one(g);
        let zero = GroupRingElt::zero(g);
        let sig = GroupRingElt::sigma_pow(g, 1);
        // unimodular upper block [[1, sigma], [0, sigma]]
        let good = PhiMatrix::new(
            &s,
            vec![
                vec![one.clone(), sig.clone(), zero.clone()],
                vec![zero.clone(), sig.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), one.clone()],
            ],
        )
        .unwrap();
        good.validate_units().unwrap();
        let three = GroupRingElt::from_terms(g, &[(0, 3)]);
        let bad = PhiMatrix::new(
            &s,
            vec![
                vec![three, zero.clone(), zero.clone()],
                vec![zero.clone(), one.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), one.clone()],
            ],
        )
        .unwrap();
        assert!(matches!(bad.validate_units(), Err(Error::InvalidPhi(_))));
        let broken = PhiMatrix::new(
            &s,
            vec![
                vec![one.clone(), zero.clone(), sig],
                vec![zero.clone(), one.clone(), zero.clone()],
                vec![zero.clone(), zero, one],
            ],
        );
        assert!(matches!(broken, Err(Error::InvalidPhi(_))));
    }
}
