//! Supercuspidal criteria, elementary packets, admissible orders, dominating
//! parameters and the Jacquet-module schedules built from them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{HalfInt, Sign};
use crate::error::{Error, Result};
use crate::group::{classify, component_group, is_good_parity, rho_classes, Character};
use crate::packet::LabeledPacket;
use crate::param::{AParameter, IrrSymbol, Summand};

pub const DEFAULT_SEARCH_CAP: u32 = 50;

/// `+1` if `a ≥ b`, `-1` otherwise.
pub fn zeta(s: &Summand) -> Sign {
    Sign::from_bool_minus(s.a < s.b)
}

/// Multiplicity-free, good parity, trivial Arthur `SL_2`.
pub fn check_discrete(phi: &AParameter) -> Result<()> {
    if !is_good_parity(phi) {
        return Err(Error::NotDiscrete("not every summand has the parity of the parameter".into()));
    }
    if let Some((s, _)) = phi.summands().iter().find(|(_, m)| *m > 1) {
        return Err(Error::NotDiscrete(format!("{} occurs more than once", crate::param::display_summand(s))));
    }
    if let Some((s, _)) = phi.summands().iter().find(|(s, _)| s.b != 1) {
        return Err(Error::NotDiscrete(format!("{} has b > 1", crate::param::display_summand(s))));
    }
    Ok(())
}

/// Chain, alternating and initial conditions, plus triviality on `z`.
pub fn supercuspidal_support(phi: &AParameter, eta: &Character) -> Result<bool> {
    check_discrete(phi)?;
    let g = component_group(phi, true);
    if eta.rank() != g.rank() {
        return Err(Error::InvalidPacket(format!("character has rank {}, expected {}", eta.rank(), g.rank())));
    }
    if !g.admits(eta) {
        return Ok(false);
    }
    for (i, s) in g.basis.iter().enumerate() {
        if s.a == 2 && eta.value(i) != Sign::Minus {
            return Ok(false);
        }
        if s.a > 2 {
            let Some(j) = g.index_of(&s.with_ab(s.a - 2, 1)) else {
                return Ok(false);
            };
            if eta.value(i) * eta.value(j) != Sign::Minus {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All supercuspidal characters, in enumeration order.
///
/// Even chains are forced by the initial condition; every odd chain has one
/// free sign, so only `2^{#odd chains}` candidates are visited.
pub fn enumerate_supercuspidals(phi: &AParameter, bound: usize) -> Result<Vec<Character>> {
    check_discrete(phi)?;
    let g = component_group(phi, true);
    let mut forced = vec![Sign::Plus; g.rank()];
    let mut odd_chains: Vec<Vec<usize>> = Vec::new();
    for idx in rho_classes(&g.basis).into_values() {
        let mut by_a: Vec<(u32, usize)> = idx.iter().map(|&i| (g.basis[i].a, i)).collect();
        by_a.sort();
        let start = by_a[0].0;
        let is_chain = start <= 2 && by_a.iter().enumerate().all(|(k, (a, _))| *a == start + 2 * k as u32);
        if !is_chain {
            return Ok(Vec::new());
        }
        if start == 2 {
            for (k, (_, i)) in by_a.iter().enumerate() {
                forced[*i] = Sign::from_bool_minus(k % 2 == 0);
            }
        } else {
            for (k, (_, i)) in by_a.iter().enumerate() {
                forced[*i] = Sign::from_bool_minus(k % 2 == 1);
            }
            odd_chains.push(by_a.into_iter().map(|(_, i)| i).collect());
        }
    }
    if odd_chains.len() > bound {
        return Err(Error::EnumerationTooLarge { size: odd_chains.len(), bound });
    }
    let mut out = Vec::new();
    for k in 0u64..1 << odd_chains.len() {
        let mut values = forced.clone();
        for (c, chain) in odd_chains.iter().enumerate() {
            if k >> c & 1 == 1 {
                for &i in chain {
                    values[i] = -values[i];
                }
            }
        }
        let eta = Character { values };
        if g.admits(&eta) {
            out.push(eta);
        }
    }
    out.sort_by_key(Character::index);
    Ok(out)
}

/// The packet of an elementary parameter: one member per character of `𝒮̄_ψ`.
pub fn elementary_packet(psi: &AParameter, bound: usize) -> Result<LabeledPacket> {
    if !classify(psi).elementary {
        return Err(Error::NotElementary);
    }
    LabeledPacket::all_characters(psi.clone(), true, bound)
}

/// A total order on each `I_{ψ,ρ}`, stored as one rank per element of the
/// expanded index set (higher rank means greater).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AdmissibleOrder {
    pub ranks: Vec<u32>,
}

fn check_order_shape(psi: &AParameter, order: &AdmissibleOrder) -> Result<Vec<Summand>> {
    let idx = psi.expanded();
    if order.ranks.len() != idx.len() {
        return Err(Error::InvalidOrder(format!("{} ranks given for {} indices", order.ranks.len(), idx.len())));
    }
    for class in rho_classes(&idx).values() {
        let ranks: BTreeSet<u32> = class.iter().map(|&i| order.ranks[i]).collect();
        if ranks.len() != class.len() {
            return Err(Error::InvalidOrder("ranks must be distinct among indices with the same rho".into()));
        }
    }
    Ok(idx)
}

fn dominance_forces(si: &Summand, sj: &Summand) -> bool {
    let (ai, bi, aj, bj) = (si.a as i64, si.b as i64, sj.a as i64, sj.b as i64);
    zeta(si) == zeta(sj) && ai + bi > aj + bj && (ai - bi).abs() > (aj - bj).abs()
}

pub fn validate_admissible_order(psi: &AParameter, order: &AdmissibleOrder) -> Result<bool> {
    let idx = check_order_shape(psi, order)?;
    for class in rho_classes(&idx).values() {
        for &i in class {
            for &j in class {
                if dominance_forces(&idx[i], &idx[j]) && order.ranks[i] <= order.ranks[j] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether `i > j ⟺ a_i+b_i > a_j+b_j` on each `I_{ψ,ρ}`.
pub fn is_natural_order(psi: &AParameter, order: &AdmissibleOrder) -> Result<bool> {
    let idx = check_order_shape(psi, order)?;
    for class in rho_classes(&idx).values() {
        for &i in class {
            for &j in class {
                let bigger = idx[i].a + idx[i].b > idx[j].a + idx[j].b;
                if bigger != (order.ranks[i] > order.ranks[j]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Ranks by `(a+b, |a-b|)` and then position; always admissible.
pub fn default_admissible_order(psi: &AParameter) -> AdmissibleOrder {
    let idx = psi.expanded();
    let mut ranks = vec![0; idx.len()];
    for class in rho_classes(&idx).values() {
        let mut sorted = class.clone();
        sorted.sort_by_key(|&i| (idx[i].a + idx[i].b, idx[i].a.abs_diff(idx[i].b), i));
        for (rank, i) in sorted.into_iter().enumerate() {
            ranks[i] = rank as u32;
        }
    }
    AdmissibleOrder { ranks }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Domination {
    pub psi_gg: AParameter,
    /// Indexed like `psi.expanded()`.
    pub t: Vec<u32>,
    #[serde(skip)]
    pub pairs: Vec<(Summand, Summand)>,
    /// The input order transported to `psi_gg`.
    pub order_gg: AdmissibleOrder,
}

fn inflate(s: &Summand, t: u32) -> Summand {
    if zeta(s) == Sign::Plus {
        s.with_ab(s.a + 2 * t, s.b)
    } else {
        s.with_ab(s.a, s.b + 2 * t)
    }
}

/// Greedy construction of a DDR parameter dominating `psi` for which `order` is natural.
///
/// Within each `ρ`, indices are handled by increasing rank; each takes the least
/// `t ≤ cap` whose `a'+b'` exceeds all earlier ones and whose diagonal
/// restriction avoids the constituents already placed.
pub fn dominate(psi: &AParameter, order: &AdmissibleOrder, cap: u32) -> Result<Domination> {
    if !is_good_parity(psi) {
        return Err(Error::NotGoodParity);
    }
    if !validate_admissible_order(psi, order)? {
        return Err(Error::InvalidOrder("order is not admissible".into()));
    }
    let idx = psi.expanded();
    let mut t = vec![0u32; idx.len()];
    for class in rho_classes(&idx).values() {
        let mut sorted = class.clone();
        sorted.sort_by_key(|&i| order.ranks[i]);
        let mut top = 0u32;
        let mut used: BTreeSet<u32> = BTreeSet::new();
        for i in sorted {
            let found = (0..=cap).find_map(|ti| {
                let s = inflate(&idx[i], ti);
                let diag: Vec<u32> = (0..s.a.min(s.b)).map(|k| s.a + s.b - 1 - 2 * k).collect();
                (s.a + s.b > top && diag.iter().all(|c| !used.contains(c))).then_some((ti, s, diag))
            });
            let (ti, s, diag) = found.ok_or(Error::SearchBoundExceeded { index: i, cap })?;
            t[i] = ti;
            top = s.a + s.b;
            used.extend(diag);
        }
    }
    let pairs: Vec<(Summand, Summand)> = idx.iter().zip(&t).map(|(s, &ti)| (s.clone(), inflate(s, ti))).collect();
    let psi_gg = psi.with_summands(pairs.iter().map(|(_, g)| (g.clone(), 1)).collect())?;
    debug_assert!(classify(&psi_gg).ddr);
    let gg_idx = psi_gg.expanded();
    let mut ranks = vec![0; gg_idx.len()];
    for (i, (_, g)) in pairs.iter().enumerate() {
        let pos = gg_idx.iter().position(|x| x == g).expect("dominating summands are distinct");
        ranks[pos] = order.ranks[i];
    }
    Ok(Domination { psi_gg, t, pairs, order_gg: AdmissibleOrder { ranks } })
}

/// The matrix `X^≫` of exponents taking `s_gg` back to `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedSegment {
    #[serde(skip)]
    pub rho: IrrSymbol,
    pub zeta: Sign,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<HalfInt>>,
    /// Column by column, each column top to bottom.
    pub application_order: Vec<HalfInt>,
}

impl GeneralizedSegment {
    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn segment(s: &Summand, s_gg: &Summand) -> Result<GeneralizedSegment> {
    let bad = |why: &str| Error::NotDominatingPair(why.to_string());
    if s.rho != s_gg.rho || s.half_shift != s_gg.half_shift {
        return Err(bad("summands have different rho"));
    }
    let (a, b, a2, b2) = (s.a as i64, s.b as i64, s_gg.a as i64, s_gg.b as i64);
    let (z, t, rows) = if a2 == a && b2 == b {
        (zeta(s), 0, 0)
    } else if b2 == b && a2 > a && a >= b && (a2 - a) % 2 == 0 {
        (Sign::Plus, (a2 - a) / 2, b)
    } else if a2 == a && b2 > b && a <= b && (b2 - b) % 2 == 0 {
        (Sign::Minus, (b2 - b) / 2, a)
    } else {
        return Err(bad("dimensions do not differ by 2t in the direction of zeta"));
    };
    let zs = z.to_i8() as i64;
    let top_left = a2 - b2;
    let entries: Vec<Vec<HalfInt>> = (0..rows)
        .map(|r| (0..t).map(|c| HalfInt::from_doubled(top_left - 2 * zs * c + 2 * zs * r)).collect())
        .collect();
    let application_order = (0..t as usize).flat_map(|c| entries.iter().map(move |row| row[c])).collect();
    Ok(GeneralizedSegment {
        rho: s.rho.clone(),
        zeta: z,
        rows: rows as usize,
        cols: t as usize,
        entries,
        application_order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScheduleEntry {
    pub rho: IrrSymbol,
    pub exponent: HalfInt,
}

impl Serialize for ScheduleEntry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            rho_id: &'a str,
            exponent_x2: i64,
        }
        Out { rho_id: &self.rho.id, exponent_x2: self.exponent.doubled() }.serialize(s)
    }
}

/// Partial Jacquet operations: per `ρ`, summands in decreasing order, each
/// contributing its segment in application order.
pub fn jacquet_schedule(psi: &AParameter, order: &AdmissibleOrder, dom: &Domination) -> Result<Vec<ScheduleEntry>> {
    let idx = check_order_shape(psi, order)?;
    if dom.pairs.len() != idx.len() || dom.pairs.iter().zip(&idx).any(|((s, _), t)| s != t) {
        return Err(Error::NotDominatingPair("domination data does not match psi".into()));
    }
    let mut out = Vec::new();
    for class in rho_classes(&idx).values() {
        let mut sorted = class.clone();
        sorted.sort_by_key(|&i| std::cmp::Reverse(order.ranks[i]));
        for i in sorted {
            let (s, g) = &dom.pairs[i];
            let seg = segment(s, g)?;
            out.extend(seg.application_order.iter().map(|&x| ScheduleEntry { rho: s.rho.clone(), exponent: x }));
        }
    }
    Ok(out)
}

/// `(n-r, n-r+1, …, n-r₀-1)`.
pub fn descent_segment(n: u32, r: u32, r0: u32) -> Result<Vec<i64>> {
    if r <= r0 {
        return Err(Error::InvalidRange(format!("need r > r0, got r = {r}, r0 = {r0}")));
    }
    if r0 <= n {
        return Err(Error::InvalidRange(format!("need r0 > n, got r0 = {r0}, n = {n}")));
    }
    Ok((n as i64 - r as i64..n as i64 - r0 as i64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_characters, DEFAULT_MAX_ENUM};
    use crate::param::{Case, Duality, Side};

    fn orth(id: &str) -> IrrSymbol {
        IrrSymbol::new(id, 1, Duality::Orthogonal)
    }

    fn sp(id: &str) -> IrrSymbol {
        IrrSymbol::new(id, 1, Duality::Symplectic)
    }

    fn build(side: Side, terms: &[(IrrSymbol, u32, u32, u32)]) -> AParameter {
        let summands: Vec<_> = terms.iter().map(|(r, a, b, m)| (Summand::new(r.clone(), *a, *b), *m)).collect();
        let dim = summands.iter().map(|(s, m)| s.dim() * *m as u64).sum();
        AParameter::new(Case::O, side, dim, summands).unwrap()
    }

    /// Naive filter over every character of the quotient group.
    fn brute_force(phi: &AParameter) -> Vec<Character> {
        let g = component_group(phi, true);
        enumerate_characters(&g, DEFAULT_MAX_ENUM)
            .unwrap()
            .into_iter()
            .filter(|eta| supercuspidal_support(phi, eta).unwrap())
            .collect()
    }

    #[test]
    fn worked_example_two_characters() {
        // ρ⊠S1 + ρ⊠S3 + χ on the odd orthogonal side.
        let phi = build(Side::H, &[(orth("rho"), 1, 1, 1), (orth("rho"), 3, 1, 1), (orth("chi"), 1, 1, 1)]);
        let sc = enumerate_supercuspidals(&phi, DEFAULT_MAX_ENUM).unwrap();
        assert_eq!(sc.len(), 2);
        assert_eq!(sc, brute_force(&phi));
        let g = component_group(&phi, true);
        let x1 = g.index_of(&Summand::new(orth("rho"), 1, 1)).unwrap();
        let x3 = g.index_of(&Summand::new(orth("rho"), 3, 1)).unwrap();
        let xc = g.index_of(&Summand::new(orth("chi"), 1, 1)).unwrap();
        let eta = sc.iter().find(|e| e.value(x1) == Sign::Plus).unwrap();
        assert_eq!((eta.value(x3), eta.value(xc)), (Sign::Minus, Sign::Minus));
    }

    #[test]
    fn broken_chain() {
        let phi = build(Side::H, &[(orth("rho"), 3, 1, 1)]);
        assert!(enumerate_supercuspidals(&phi, DEFAULT_MAX_ENUM).unwrap().is_empty());
        assert!(brute_force(&phi).is_empty());
    }

    #[test]
    fn initial_condition() {
        let phi = build(Side::G, &[(sp("rho"), 2, 1, 1), (orth("chi"), 1, 1, 1), (orth("chi2"), 1, 1, 1)]);
        let g = component_group(&phi, true);
        let x2 = g.index_of(&Summand::new(sp("rho"), 2, 1)).unwrap();
        let mut eta = Character::trivial(3);
        assert!(!supercuspidal_support(&phi, &eta).unwrap());
        eta.values[x2] = Sign::Minus;
        let other = (0..3).find(|&i| i != x2).unwrap();
        eta.values[other] = Sign::Minus;
        assert!(supercuspidal_support(&phi, &eta).unwrap());
    }

    #[test]
    fn even_chain_forced() {
        let phi = build(Side::G, &[(sp("rho"), 2, 1, 1), (sp("rho"), 4, 1, 1)]);
        let sc = enumerate_supercuspidals(&phi, DEFAULT_MAX_ENUM).unwrap();
        // η(x2) = -1, η(x4) = +1 is not trivial on z = x2 + x4.
        assert!(sc.is_empty());
        assert_eq!(sc, brute_force(&phi));
    }

    #[test]
    fn vacuous_conditions() {
        let phi = build(Side::G, &[(orth("a"), 1, 1, 1), (orth("b"), 1, 1, 1)]);
        assert_eq!(enumerate_supercuspidals(&phi, DEFAULT_MAX_ENUM).unwrap().len(), 2);
    }

    #[test]
    fn rejects_non_discrete() {
        let phi = build(Side::G, &[(orth("a"), 1, 1, 2)]);
        assert!(matches!(enumerate_supercuspidals(&phi, DEFAULT_MAX_ENUM), Err(Error::NotDiscrete(_))));
    }

    #[test]
    fn elementary_counts() {
        let p = build(Side::H, &[(orth("a"), 1, 1, 1), (orth("b"), 1, 1, 1), (orth("c"), 1, 1, 1)]);
        assert_eq!(elementary_packet(&p, DEFAULT_MAX_ENUM).unwrap().len(), 4);
        let p = AParameter::empty(Case::O, Side::G);
        let pk = elementary_packet(&p, DEFAULT_MAX_ENUM).unwrap();
        assert_eq!(pk.len(), 1);
        assert_eq!(pk.members[0].character, Character::trivial(0));
        // m = 2 on both basis vectors: z = 0, nothing is quotiented out. Not DDR though,
        // so the count is checked on the component group directly.
        let p = build(Side::G, &[(orth("a"), 1, 1, 2), (orth("b"), 1, 1, 2)]);
        assert_eq!(component_group(&p, true).dual_order(), 4);
        assert!(matches!(elementary_packet(&p, DEFAULT_MAX_ENUM), Err(Error::NotElementary)));
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta(&Summand::new(orth("r"), 3, 1)), Sign::Plus);
        assert_eq!(zeta(&Summand::new(orth("r"), 2, 3)), Sign::Minus);
        assert_eq!(zeta(&Summand::new(orth("r"), 2, 2)), Sign::Plus);
    }

    #[test]
    fn order_validation() {
        let p = build(Side::G, &[(orth("r"), 5, 1, 1), (orth("r"), 3, 1, 1)]);
        // expanded order: (3,1), (5,1)
        assert!(validate_admissible_order(&p, &AdmissibleOrder { ranks: vec![0, 1] }).unwrap());
        assert!(!validate_admissible_order(&p, &AdmissibleOrder { ranks: vec![1, 0] }).unwrap());

        let p = build(Side::G, &[(orth("r"), 3, 1, 1), (orth("r"), 1, 3, 1)]);
        assert!(validate_admissible_order(&p, &AdmissibleOrder { ranks: vec![0, 1] }).unwrap());
        assert!(validate_admissible_order(&p, &AdmissibleOrder { ranks: vec![1, 0] }).unwrap());

        let p = build(Side::H, &[(orth("r"), 3, 1, 1)]);
        assert!(validate_admissible_order(&p, &AdmissibleOrder { ranks: vec![7] }).unwrap());
        assert!(matches!(
            validate_admissible_order(&p, &AdmissibleOrder { ranks: vec![] }),
            Err(Error::InvalidOrder(_))
        ));
    }

    #[test]
    fn dominate_already_ddr() {
        let p = build(Side::G, &[(orth("r"), 1, 1, 1), (orth("r"), 3, 1, 1)]);
        let d = dominate(&p, &default_admissible_order(&p), DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(d.t, vec![0, 0]);
        assert_eq!(d.psi_gg, p);
    }

    #[test]
    fn dominate_spec_example() {
        let p = build(Side::G, &[(sp("r"), 2, 1, 1), (sp("r"), 2, 3, 1)]);
        // (2,1) above (2,3); ζ differs so this order is admissible.
        let order = AdmissibleOrder { ranks: vec![1, 0] };
        assert!(validate_admissible_order(&p, &order).unwrap());
        let d = dominate(&p, &order, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(d.t, vec![2, 0]);
        let ab: Vec<_> = d.psi_gg.summands().iter().map(|(s, _)| (s.a, s.b)).collect();
        assert_eq!(ab, vec![(2, 3), (6, 1)]);
        assert!(classify(&d.psi_gg).ddr);
        assert!(is_natural_order(&d.psi_gg, &d.order_gg).unwrap());
    }

    #[test]
    fn dominate_splits_equal_summands() {
        let p = build(Side::G, &[(sp("r"), 1, 2, 2)]);
        let d = dominate(&p, &AdmissibleOrder { ranks: vec![0, 1] }, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(d.t, vec![0, 1]);
        let bs: Vec<_> = d.psi_gg.summands().iter().map(|(s, _)| s.b).collect();
        assert_eq!(bs, vec![2, 4]);
    }

    #[test]
    fn dominate_cap() {
        let p = build(Side::G, &[(sp("r"), 1, 2, 3)]);
        let err = dominate(&p, &default_admissible_order(&p), 0).unwrap_err();
        assert!(matches!(err, Error::SearchBoundExceeded { cap: 0, .. }));
    }

    #[test]
    fn segment_examples() {
        let s = Summand::new(sp("r"), 2, 1);
        let seg = segment(&s, &s).unwrap();
        assert!(seg.is_empty() && seg.application_order.is_empty());

        let seg = segment(&s, &s.with_ab(6, 1)).unwrap();
        assert_eq!((seg.rows, seg.cols), (1, 2));
        assert_eq!(seg.application_order, vec![HalfInt::from_doubled(5), HalfInt::from_doubled(3)]);

        let o = Summand::new(orth("r"), 1, 1);
        let seg = segment(&o, &o.with_ab(1, 3)).unwrap();
        assert_eq!(seg.zeta, Sign::Minus);
        assert_eq!(seg.application_order, vec![HalfInt::from_int(-1)]);

        assert!(segment(&s, &s.with_ab(2, 3)).is_err());
        assert!(segment(&s, &s.with_ab(5, 1)).is_err());
    }

    #[test]
    fn schedule_order() {
        let p = build(Side::G, &[(sp("r"), 2, 1, 1), (sp("r"), 2, 3, 1)]);
        let order = AdmissibleOrder { ranks: vec![1, 0] };
        let d = dominate(&p, &order, DEFAULT_SEARCH_CAP).unwrap();
        let sched = jacquet_schedule(&p, &order, &d).unwrap();
        let xs: Vec<i64> = sched.iter().map(|e| e.exponent.doubled()).collect();
        assert_eq!(xs, vec![5, 3]);

        // Natural order on a DDR parameter with both summands inflated: larger a+b goes first.
        let p = build(Side::G, &[(orth("r"), 1, 1, 1), (orth("r"), 3, 1, 1)]);
        let d = Domination {
            psi_gg: p.clone(),
            t: vec![1, 1],
            pairs: vec![
                (Summand::new(orth("r"), 1, 1), Summand::new(orth("r"), 3, 1)),
                (Summand::new(orth("r"), 3, 1), Summand::new(orth("r"), 5, 1)),
            ],
            order_gg: AdmissibleOrder { ranks: vec![0, 1] },
        };
        let sched = jacquet_schedule(&p, &AdmissibleOrder { ranks: vec![0, 1] }, &d).unwrap();
        let xs: Vec<i64> = sched.iter().map(|e| e.exponent.doubled()).collect();
        assert_eq!(xs, vec![4, 2]);
    }

    #[test]
    fn descent_examples() {
        assert_eq!(descent_segment(1, 5, 3).unwrap(), vec![-4, -3]);
        assert_eq!(descent_segment(1, 4, 3).unwrap(), vec![-3]);
        assert_eq!(descent_segment(0, 4, 2).unwrap(), vec![-4, -3]);
        assert!(descent_segment(0, 2, 2).is_err());
    }
}
