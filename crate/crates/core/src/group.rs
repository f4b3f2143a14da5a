//! Structural operations on parameters and the component group over 𝔽₂.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{HalfInt, Sign};
use crate::error::{Error, Result};
use crate::param::{AParameter, IrrSymbol, Side, Summand};

/// Default cap on the number of basis vectors for character enumeration.
pub const DEFAULT_MAX_ENUM: usize = 20;

/// `ρ⊠S_a⊠S_b ↦ Σ_{k<min(a,b)} ρ⊠S_{a+b-1-2k}⊠S_1`.
pub fn diagonal_restriction(psi: &AParameter) -> AParameter {
    let mut out = Vec::new();
    for (s, m) in psi.summands() {
        for k in 0..s.a.min(s.b) {
            out.push((s.with_ab(s.a + s.b - 1 - 2 * k, 1), *m));
        }
    }
    psi.with_summands(out).expect("diagonal restriction of a valid parameter is valid")
}

/// Expands each `ρ⊠S_a⊠S_b` into `Σ_j ρ|·|^{(b+1)/2-j}⊠S_a⊠S_1`.
pub fn l_parameter_of(psi: &AParameter) -> AParameter {
    let mut out = Vec::new();
    for (s, m) in psi.summands() {
        for j in 1..=s.b as i64 {
            let x = HalfInt::from_doubled(s.b as i64 + 1 - 2 * j);
            let piece = Summand { rho: s.rho.clone(), a: s.a, b: 1, half_shift: s.half_shift + x };
            out.push((piece, *m));
        }
    }
    psi.with_summands(out).expect("L-parameter of a valid parameter is valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub good_parity: bool,
    pub ddr: bool,
    pub elementary: bool,
}

pub fn is_good_parity(psi: &AParameter) -> bool {
    psi.side() != Side::Gl && psi.summands().iter().all(|(s, _)| s.is_same_parity(psi.case(), psi.side()))
}

pub fn classify(psi: &AParameter) -> Classification {
    let good_parity = is_good_parity(psi);
    let ddr = good_parity && {
        let d = diagonal_restriction(psi);
        d.summands().iter().all(|(s, m)| *m == 1 && s.is_same_parity(psi.case(), psi.side()))
    };
    let elementary = ddr && psi.summands().iter().all(|(s, _)| s.a.min(s.b) == 1);
    Classification { good_parity, ddr, elementary }
}

/// 𝔽₂-space with one basis vector per distinct same-parity summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentGroup {
    #[serde(serialize_with = "ser_basis")]
    pub basis: Vec<Summand>,
    pub z: Vec<bool>,
    pub quotient_by_z: bool,
}

fn ser_basis<S: serde::Serializer>(b: &[Summand], s: S) -> std::result::Result<S::Ok, S::Error> {
    b.iter().map(crate::param::display_summand).collect::<Vec<_>>().serialize(s)
}

pub fn component_group(psi: &AParameter, quotient: bool) -> ComponentGroup {
    let mut basis = Vec::new();
    let mut z = Vec::new();
    for (s, m) in psi.summands() {
        if s.is_same_parity(psi.case(), psi.side()) {
            basis.push(s.clone());
            z.push(m % 2 == 1);
        }
    }
    ComponentGroup { basis, z, quotient_by_z: quotient }
}

impl ComponentGroup {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, s: &Summand) -> Option<usize> {
        self.basis.iter().position(|b| b == s)
    }

    pub fn z_is_zero(&self) -> bool {
        self.z.iter().all(|b| !b)
    }

    pub fn admits(&self, eta: &Character) -> bool {
        eta.values.len() == self.rank() && (!self.quotient_by_z || eta.eval(&self.z) == Sign::Plus)
    }

    /// Number of characters, without enumerating them.
    pub fn dual_order(&self) -> u128 {
        let full = 1u128 << self.rank();
        if self.quotient_by_z && !self.z_is_zero() {
            full / 2
        } else {
            full
        }
    }
}

/// A character of an elementary abelian 2-group, given by its values on a basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character {
    pub values: Vec<Sign>,
}

impl Character {
    pub fn trivial(rank: usize) -> Character {
        Character { values: vec![Sign::Plus; rank] }
    }

    /// Character with index `k` in the enumeration order: bit `j` set means `-1` on `a_j`.
    pub fn from_index(rank: usize, k: u64) -> Character {
        Character { values: (0..rank).map(|j| Sign::from_bool_minus(k >> j & 1 == 1)).collect() }
    }

    pub fn index(&self) -> u64 {
        self.values.iter().enumerate().fold(0, |acc, (j, v)| if v.is_minus() { acc | 1 << j } else { acc })
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, j: usize) -> Sign {
        self.values[j]
    }

    /// Value on the element with coordinates `x`.
    pub fn eval(&self, x: &[bool]) -> Sign {
        Sign::product(self.values.iter().zip(x).filter(|(_, b)| **b).map(|(v, _)| *v))
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character { values: self.values.iter().zip(&other.values).map(|(a, b)| *a * *b).collect() }
    }
}

pub fn enumerate_characters(g: &ComponentGroup, bound: usize) -> Result<Vec<Character>> {
    if g.rank() > bound {
        return Err(Error::EnumerationTooLarge { size: g.rank(), bound });
    }
    let total = 1u64 << g.rank();
    let mut out = Vec::with_capacity(g.dual_order() as usize);
    for k in 0..total {
        let eta = Character::from_index(g.rank(), k);
        if !g.quotient_by_z || eta.eval(&g.z) == Sign::Plus {
            out.push(eta);
        }
    }
    Ok(out)
}

/// Group summand indices by their underlying `ρ|·|^x`.
pub fn rho_classes(summands: &[Summand]) -> BTreeMap<(IrrSymbol, HalfInt), Vec<usize>> {
    let mut out: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (i, s) in summands.iter().enumerate() {
        out.entry(s.rho_key()).or_default().push(i);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::{Case, Duality};

    fn rho(id: &str, dim: u32, d: Duality) -> IrrSymbol {
        IrrSymbol::new(id, dim, d)
    }

    fn param(case: Case, side: Side, terms: &[(IrrSymbol, u32, u32, u32)]) -> AParameter {
        let summands: Vec<_> = terms.iter().map(|(r, a, b, m)| (Summand::new(r.clone(), *a, *b), *m)).collect();
        let dim = summands.iter().map(|(s, m)| s.dim() * *m as u64).sum();
        AParameter::new(case, side, dim, summands).unwrap()
    }

    fn ab_list(p: &AParameter) -> Vec<(u32, u32, u32)> {
        p.summands().iter().map(|(s, m)| (s.a, s.b, *m)).collect()
    }

    #[test]
    fn diagonal_restriction_examples() {
        let r = rho("r", 1, Duality::Orthogonal);
        let p = param(Case::O, Side::Gl, &[(r.clone(), 1, 2, 1)]);
        assert_eq!(ab_list(&diagonal_restriction(&p)), vec![(2, 1, 1)]);
        let p = param(Case::O, Side::Gl, &[(r.clone(), 2, 3, 1)]);
        assert_eq!(ab_list(&diagonal_restriction(&p)), vec![(2, 1, 1), (4, 1, 1)]);
        let p = param(Case::O, Side::Gl, &[(r, 2, 2, 1)]);
        assert_eq!(ab_list(&diagonal_restriction(&p)), vec![(1, 1, 1), (3, 1, 1)]);
    }

    #[test]
    fn l_parameter_examples() {
        let r = rho("chi", 1, Duality::Orthogonal);
        let p = param(Case::O, Side::Gl, &[(r.clone(), 3, 1, 1)]);
        assert_eq!(l_parameter_of(&p), p);
        let p = param(Case::O, Side::Gl, &[(r, 1, 3, 1)]);
        let shifts: Vec<i64> = l_parameter_of(&p).summands().iter().map(|(s, _)| s.half_shift.doubled()).collect();
        assert_eq!(shifts, vec![-2, 0, 2]);
    }

    #[test]
    fn classify_examples() {
        let r1 = rho("rho1", 1, Duality::Orthogonal);
        let r2 = rho("rho2", 1, Duality::Orthogonal);
        let p = param(Case::O, Side::G, &[(r1.clone(), 1, 1, 1), (r2, 1, 1, 1)]);
        assert_eq!(classify(&p), Classification { good_parity: true, ddr: true, elementary: true });

        let p = param(Case::O, Side::G, &[(r1.clone(), 1, 1, 2)]);
        let c = classify(&p);
        assert!(c.good_parity && !c.ddr && !c.elementary);

        // S_2⊠S_3 is symplectic, so pair it with a symplectic ρ to land in the orthogonal side.
        let sy = rho("rho", 1, Duality::Symplectic);
        let p = param(Case::O, Side::G, &[(sy, 2, 3, 1)]);
        let c = classify(&p);
        assert!(c.good_parity && c.ddr && !c.elementary);
    }

    #[test]
    fn component_group_examples() {
        let r1 = rho("rho1", 1, Duality::Orthogonal);
        let r2 = rho("rho2", 1, Duality::Orthogonal);
        let r3 = rho("rho3", 2, Duality::Symplectic);
        let p = param(Case::O, Side::G, &[(r1.clone(), 1, 1, 1), (r2, 1, 1, 1), (r3, 1, 1, 1)]);
        let g = component_group(&p, true);
        assert_eq!(g.rank(), 2);
        assert_eq!(g.z, vec![true, true]);
        let chars = enumerate_characters(&g, DEFAULT_MAX_ENUM).unwrap();
        assert_eq!(
            chars,
            vec![
                Character { values: vec![Sign::Plus, Sign::Plus] },
                Character { values: vec![Sign::Minus, Sign::Minus] }
            ]
        );

        let p = param(Case::O, Side::G, &[(r1, 1, 1, 2)]);
        let g = component_group(&p, true);
        assert_eq!(g.rank(), 1);
        assert!(g.z_is_zero());
        assert_eq!(enumerate_characters(&g, DEFAULT_MAX_ENUM).unwrap().len(), 2);

        let g = component_group(&AParameter::empty(Case::O, Side::G), true);
        assert_eq!(enumerate_characters(&g, DEFAULT_MAX_ENUM).unwrap(), vec![Character::trivial(0)]);
    }

    #[test]
    fn enumeration_bound() {
        let g = ComponentGroup { basis: vec![], z: vec![], quotient_by_z: false };
        assert!(enumerate_characters(&g, 0).is_ok());
        let s = Summand::new(rho("r", 1, Duality::Orthogonal), 1, 1);
        let g = ComponentGroup { basis: vec![s.clone(), s], z: vec![false, false], quotient_by_z: false };
        assert!(matches!(enumerate_characters(&g, 1), Err(Error::EnumerationTooLarge { size: 2, bound: 1 })));
    }

    #[test]
    fn character_index_roundtrip() {
        for k in 0..16 {
            assert_eq!(Character::from_index(4, k).index(), k);
        }
    }
}
