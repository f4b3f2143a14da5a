//! Transfer rules for packet labels: change of Whittaker datum, contragredients
//! and extension along parabolic induction.

use std::collections::BTreeMap;

use crate::arith::Sign;
use crate::error::{Error, Result};
use crate::group::{component_group, Character};
use crate::packet::{LabeledPacket, LirRecord, Member};
use crate::param::{AParameter, Side, Summand};

/// Field element at which `ν(a_i) = det(ψ_i)(-1)` is evaluated.
pub const MINUS_ONE: &str = "-1";

/// `det(ρ ⊠ S_a ⊠ S_b)(c) = (det ρ_0(c) · ∏ χ(c)^{e·dim ρ})^{ab}` where `ρ = ρ_0 ⊗ ∏ χ^e`.
/// Values of twist characters are looked up in `oracle` under keys like `xV(c)`.
pub fn det_value(s: &Summand, c: &str, oracle: &BTreeMap<String, Sign>) -> Result<Sign> {
    let base = *s
        .rho
        .det_at
        .get(c)
        .ok_or_else(|| Error::MissingOracle(format!("det({})({c})", s.rho.label())))?;
    let mut v = base;
    for (g, e) in s.rho.twist.iter() {
        let key = format!("{g}({c})");
        let chi = *oracle.get(&key).ok_or_else(|| Error::MissingOracle(key.clone()))?;
        v = v * chi.pow(e as i64 * s.rho.dim as i64);
    }
    Ok(v.pow(s.a as i64 * s.b as i64))
}

/// `η_{ψ,c}` on the basis of the packet's component group.
pub fn whittaker_character(packet: &LabeledPacket, c: &str, oracle: &BTreeMap<String, Sign>) -> Result<Character> {
    let g = packet.group();
    let values = g.basis.iter().map(|s| det_value(s, c, oracle)).collect::<Result<Vec<_>>>()?;
    let eta = Character { values };
    if !g.admits(&eta) {
        return Err(Error::InvalidPacket(format!("the twist by det(psi_i)({c}) is nontrivial on z")));
    }
    Ok(eta)
}

/// Relabels for the Whittaker datum obtained by translating by `c`.
pub fn whittaker_twist(packet: &LabeledPacket, c: &str, oracle: &BTreeMap<String, Sign>) -> Result<LabeledPacket> {
    let eta = whittaker_character(packet, c, oracle)?;
    let members = packet
        .members
        .iter()
        .map(|m| Member { character: m.character.mul(&eta), ..m.clone() })
        .collect();
    LabeledPacket::new(packet.parameter.clone(), packet.quotient, members)
}

/// Moves the packet to `ψ^∨`, transporting characters along `a_i ↦ a_i^∨` and
/// multiplying by `ν(a_i) = det(ψ_i)(-1)`.
pub fn contragredient_twist(packet: &LabeledPacket, oracle: &BTreeMap<String, Sign>) -> Result<LabeledPacket> {
    let nu = whittaker_character(packet, MINUS_ONE, oracle)?;
    let dual = packet.parameter.contragredient();
    let g = packet.group();
    let h = component_group(&dual, packet.quotient);
    let perm: Vec<usize> = g
        .basis
        .iter()
        .map(|s| h.index_of(&s.contragredient()).expect("contragredient summands stay same-parity"))
        .collect();
    let members = packet
        .members
        .iter()
        .map(|m| {
            let mut values = vec![Sign::Plus; h.rank()];
            for (i, &j) in perm.iter().enumerate() {
                values[j] = m.character.value(i) * nu.value(i);
            }
            let lir = m.lir.clone().map(|l| LirRecord { a_tau_index: perm[l.a_tau_index], ..l });
            Member { character: Character { values }, lir, ..m.clone() }
        })
        .collect();
    LabeledPacket::new(dual, packet.quotient, members)
}

/// `ψ̃ = ψ_τ + ψ₀ + (ψ_τ^c)^∨` on the side of `psi0`.
pub fn induced_parameter(psi0: &AParameter, psi_tau: &AParameter) -> Result<AParameter> {
    if psi_tau.side() != Side::Gl {
        return Err(Error::InvalidParameter("psi_tau must be a GL-side parameter".into()));
    }
    if psi_tau.case() != psi0.case() {
        return Err(Error::InvalidParameter("psi_tau and psi_0 belong to different cases".into()));
    }
    let mut summands = psi0.summands().to_vec();
    for (s, m) in psi_tau.summands() {
        summands.push((s.clone(), *m));
        summands.push((s.dual_partner(), *m));
    }
    psi0.with_summands(summands)
}

/// Extends labels from `Π_{ψ₀}` to the induced packet over `ψ̃`.
///
/// A new same-parity summand `ψ_τ` contributes a basis vector `a_τ`; each member
/// splits into `{id}+` and `{id}-` with recorded eigenvalue `ε^k·η(a_τ)`.
/// Otherwise labels are carried over unchanged.
pub fn induct_packet(packet0: &LabeledPacket, psi_tau: &AParameter, epsilon: Sign, k: u64) -> Result<LabeledPacket> {
    if k != psi_tau.target_dim() {
        return Err(Error::InvalidParameter(format!("k = {k} but dim psi_tau = {}", psi_tau.target_dim())));
    }
    let psi0 = &packet0.parameter;
    let psi = induced_parameter(psi0, psi_tau)?;
    let (case, side) = (psi0.case(), psi0.side());
    let same: Vec<&Summand> =
        psi_tau.summands().iter().map(|(s, _)| s).filter(|s| s.is_same_parity(case, side)).collect();
    let g0 = packet0.group();
    let g = component_group(&psi, packet0.quotient);
    let embed: Vec<usize> =
        g0.basis.iter().map(|s| g.index_of(s).expect("summands of psi_0 survive in the induced parameter")).collect();
    let lift = |c: &Character, extra: Option<(usize, Sign)>| {
        let mut values = vec![Sign::Plus; g.rank()];
        for (i, &j) in embed.iter().enumerate() {
            values[j] = c.value(i);
        }
        if let Some((j, v)) = extra {
            values[j] = v;
        }
        Character { values }
    };

    let new_vector = match same.as_slice() {
        [] => None,
        [s] if psi_tau.summands().len() == 1 && psi_tau.summands()[0].1 == 1 => {
            if psi0.multiplicity(s) > 0 {
                None
            } else {
                Some(g.index_of(s).expect("new same-parity summand is a basis vector"))
            }
        }
        _ => {
            return Err(Error::Unsupported(
                "psi_tau is reducible with a same-parity constituent; no eigenvalue law is available".into(),
            ))
        }
    };

    let members = match new_vector {
        None => packet0.members.iter().map(|m| Member { character: lift(&m.character, None), ..m.clone() }).collect(),
        Some(j) => {
            let eps_k = epsilon.pow(k as i64);
            let mut out = Vec::with_capacity(2 * packet0.len());
            for m in &packet0.members {
                for (tag, v) in [("+", Sign::Plus), ("-", Sign::Minus)] {
                    out.push(Member {
                        id: format!("{}{tag}", m.id),
                        character: lift(&m.character, Some((j, v))),
                        inner_form: m.inner_form,
                        lir: Some(LirRecord {
                            parent: m.id.clone(),
                            a_tau_index: j,
                            a_tau_value: v,
                            predicted_eigenvalue: eps_k * v,
                        }),
                    });
                }
            }
            out
        }
    };
    LabeledPacket::new(psi, packet0.quotient, members)
}

/// Restricts labels along `𝒮_{ψ₀} ↪ 𝒮_ψ̃`, merging the two extensions of each member.
pub fn restrict_induced(packet: &LabeledPacket, psi0: &AParameter) -> Result<LabeledPacket> {
    let g = packet.group();
    let g0 = component_group(psi0, packet.quotient);
    let embed = g0
        .basis
        .iter()
        .map(|s| {
            g.index_of(s).ok_or_else(|| {
                Error::InvalidPacket(format!("{} is not a basis summand of the packet", crate::param::display_summand(s)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut merged: BTreeMap<String, Member> = BTreeMap::new();
    let mut order = Vec::new();
    for m in &packet.members {
        let (id, lir) = match &m.lir {
            Some(l) => (l.parent.clone(), None),
            None => (m.id.clone(), m.lir.clone()),
        };
        let character = Character { values: embed.iter().map(|&j| m.character.value(j)).collect() };
        let restricted = Member { id: id.clone(), character, inner_form: m.inner_form, lir };
        match merged.get(&id) {
            Some(prev) if *prev != restricted => {
                return Err(Error::InvalidPacket(format!("extensions of `{id}` disagree on psi_0")));
            }
            Some(_) => {}
            None => {
                order.push(id.clone());
                merged.insert(id, restricted);
            }
        }
    }
    let members = order.into_iter().map(|id| merged.remove(&id).expect("inserted above")).collect();
    LabeledPacket::new(psi0.clone(), packet.quotient, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::{Case, Duality, IrrSymbol, TwistGen, TwistWord};

    fn orth(id: &str, det: Sign) -> IrrSymbol {
        IrrSymbol::new(id, 1, Duality::Orthogonal).with_det("c", det).with_det(MINUS_ONE, det)
    }

    fn psi(dets: [Sign; 2]) -> AParameter {
        let s1 = Summand::new(orth("a", dets[0]), 1, 1);
        let s2 = Summand::new(orth("b", dets[1]), 1, 3);
        AParameter::new(Case::O, Side::G, 4, vec![(s1, 1), (s2, 1)]).unwrap()
    }

    fn full(p: AParameter) -> LabeledPacket {
        LabeledPacket::all_characters(p, false, 20).unwrap()
    }

    #[test]
    fn whittaker_trivial_det_is_identity() {
        let p = full(psi([Sign::Plus, Sign::Plus]));
        assert_eq!(whittaker_twist(&p, "c", &BTreeMap::new()).unwrap(), p);
    }

    #[test]
    fn whittaker_single_flip() {
        let p = full(psi([Sign::Plus, Sign::Minus]));
        let q = whittaker_twist(&p, "c", &BTreeMap::new()).unwrap();
        for (m, n) in p.members.iter().zip(&q.members) {
            assert_eq!(n.character.value(0), m.character.value(0));
            assert_eq!(n.character.value(1), -m.character.value(1));
        }
        assert_eq!(whittaker_twist(&q, "c", &BTreeMap::new()).unwrap(), p);
    }

    #[test]
    fn whittaker_missing_oracle() {
        let p = full(psi([Sign::Plus, Sign::Plus]));
        assert!(matches!(whittaker_twist(&p, "d", &BTreeMap::new()), Err(Error::MissingOracle(_))));
        let twisted = orth("t", Sign::Plus).with_twist(TwistWord::gen(TwistGen::V, 1));
        let q = AParameter::new(Case::O, Side::G, 2, vec![(Summand::new(twisted, 1, 1), 2)]).unwrap();
        let q = full(q);
        assert!(matches!(whittaker_twist(&q, "c", &BTreeMap::new()), Err(Error::MissingOracle(_))));
        let oracle = BTreeMap::from([("xV(c)".to_string(), Sign::Minus)]);
        let r = whittaker_twist(&q, "c", &oracle).unwrap();
        assert_eq!(r.members[0].character.value(0), -q.members[0].character.value(0));
    }

    #[test]
    fn contragredient_examples() {
        let p = full(psi([Sign::Plus, Sign::Plus]));
        assert_eq!(contragredient_twist(&p, &BTreeMap::new()).unwrap(), p);
        let p = full(psi([Sign::Minus, Sign::Plus]));
        let q = contragredient_twist(&p, &BTreeMap::new()).unwrap();
        for (m, n) in p.members.iter().zip(&q.members) {
            assert_eq!(n.character.value(0), -m.character.value(0));
            assert_eq!(n.character.value(1), m.character.value(1));
        }
        assert_eq!(contragredient_twist(&q, &BTreeMap::new()).unwrap(), p);
    }

    fn tau(rho: IrrSymbol, a: u32, b: u32) -> AParameter {
        let s = Summand::new(rho, a, b);
        let d = s.dim();
        AParameter::new(Case::O, Side::Gl, d, vec![(s, 1)]).unwrap()
    }

    #[test]
    fn induct_splits_single_member() {
        let p0 = LabeledPacket::new(psi([Sign::Plus; 2]), false, vec![Member::new("pi", Character::trivial(2))]).unwrap();
        let t = tau(orth("t", Sign::Plus), 1, 1);
        let p = induct_packet(&p0, &t, Sign::Minus, 1).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.group().rank(), 3);
        let vals: Vec<_> = p.members.iter().map(|m| m.lir.as_ref().unwrap().a_tau_value).collect();
        assert_eq!(vals, vec![Sign::Plus, Sign::Minus]);
        for m in &p.members {
            let l = m.lir.as_ref().unwrap();
            assert_eq!(l.predicted_eigenvalue, -l.a_tau_value);
            assert_eq!(m.character.value(l.a_tau_index), l.a_tau_value);
        }
        assert_eq!(restrict_induced(&p, &p0.parameter).unwrap(), p0);
    }

    #[test]
    fn induct_opposite_parity_carries_labels() {
        let p0 = full(psi([Sign::Plus; 2]));
        let t = tau(IrrSymbol::new("s", 2, Duality::Symplectic), 1, 1);
        let p = induct_packet(&p0, &t, Sign::Plus, 2).unwrap();
        assert_eq!(p.group().rank(), 2);
        assert_eq!(p.label_multiset(), p0.label_multiset());
        assert!(p.members.iter().all(|m| m.lir.is_none()));
        assert_eq!(restrict_induced(&p, &p0.parameter).unwrap(), p0);
    }

    #[test]
    fn induct_existing_summand_and_errors() {
        let p0 = full(psi([Sign::Plus; 2]));
        let t = tau(orth("a", Sign::Plus), 1, 1);
        let p = induct_packet(&p0, &t, Sign::Plus, 1).unwrap();
        assert_eq!(p.label_multiset(), p0.label_multiset());
        assert!(induct_packet(&p0, &t, Sign::Plus, 2).is_err());
        let pair = AParameter::new(
            Case::O,
            Side::Gl,
            2,
            vec![(Summand::new(orth("u", Sign::Plus), 1, 1), 1), (Summand::new(orth("v", Sign::Plus), 1, 1), 1)],
        )
        .unwrap();
        assert!(matches!(induct_packet(&p0, &pair, Sign::Plus, 2), Err(Error::Unsupported(_))));
    }
}
