//! Parameter-level theta lift from `G` to the stable-range partner `H`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::packet::{LabeledPacket, Member};
use crate::param::{AParameter, Case, IrrSymbol, Side, Summand, TwistGen, TwistRole, TwistWord};
use crate::group::{component_group, Character};

/// The auxiliary characters `(χ_V, χ_W)` used by the lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TwistPair {
    #[serde(serialize_with = "ser_gen")]
    pub v: TwistGen,
    #[serde(serialize_with = "ser_gen")]
    pub w: TwistGen,
}

fn ser_gen<S: serde::Serializer>(g: &TwistGen, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(g)
}

impl Default for TwistPair {
    fn default() -> TwistPair {
        TwistPair { v: TwistGen::V, w: TwistGen::W }
    }
}

impl TwistPair {
    pub fn variant(k: u8) -> TwistPair {
        TwistPair {
            v: TwistGen { role: TwistRole::V, variant: k },
            w: TwistGen { role: TwistRole::W, variant: k },
        }
    }

    /// `χ_W^{-1} χ_V`.
    pub fn joint(&self) -> TwistWord {
        let mut w = TwistWord::gen(self.v, 1);
        w.push(self.w, -1);
        w
    }
}

/// Dimension of the standard representation of `H` at level `r`.
pub fn h_dim(case: Case, r: u32) -> u64 {
    match case {
        Case::O | Case::U0 => 2 * r as u64 + 1,
        Case::U1 => 2 * r as u64,
    }
}

fn level_from_h_dim(case: Case, dim: u64) -> Option<u32> {
    let r = match case {
        Case::O | Case::U0 if dim % 2 == 1 => (dim - 1) / 2,
        Case::U1 if dim % 2 == 0 => dim / 2,
        _ => return None,
    };
    u32::try_from(r).ok()
}

/// The summand `χ_V ⊠ S_1 ⊠ S_{2r-2n+1}` added by the lift.
pub fn extra_summand(case: Case, pair: TwistPair, n: u32, r: u32) -> Summand {
    let chi_v = IrrSymbol::trivial(case).with_twist(TwistWord::gen(pair.v, 1));
    Summand::new(chi_v, 1, 2 * (r - n) + 1)
}

pub fn theta_parameter(psi: &AParameter, r: u32) -> Result<AParameter> {
    theta_parameter_with(psi, r, TwistPair::default())
}

pub fn theta_parameter_with(psi: &AParameter, r: u32, pair: TwistPair) -> Result<AParameter> {
    if psi.side() != Side::G {
        return Err(Error::InvalidParameter("theta lift needs a G-side parameter".into()));
    }
    let dim_v = psi.target_dim();
    if (r as u64) <= dim_v {
        return Err(Error::OutsideStableRange { r, dim_v: dim_v as u32 });
    }
    let n = psi.witt_n()?;
    let joint = pair.joint();
    let mut summands: Vec<(Summand, u32)> = psi
        .summands()
        .iter()
        .map(|(s, m)| {
            let mut t = s.clone();
            t.rho.twist = t.rho.twist.mul(&joint);
            (t, *m)
        })
        .collect();
    summands.push((extra_summand(psi.case(), pair, n, r), 1));
    AParameter::new(psi.case(), Side::H, h_dim(psi.case(), r), summands)
}

/// Basis correspondence `𝒮_ψ → 𝒮_θ(ψ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaEmbedding {
    pub pair: TwistPair,
    pub n: u32,
    pub r: u32,
    /// `map[i]` is the index in the `H` basis of the image of `a_i`.
    pub map: Vec<usize>,
    /// Index of the basis vector of the added summand.
    pub extra: usize,
}

pub fn embed_component_groups(psi: &AParameter, theta_psi: &AParameter) -> Result<ThetaEmbedding> {
    if psi.side() != Side::G || theta_psi.side() != Side::H || psi.case() != theta_psi.case() {
        return Err(Error::NotAThetaPair("expected a G-side and an H-side parameter of the same case".into()));
    }
    let case = psi.case();
    let r = level_from_h_dim(case, theta_psi.target_dim())
        .ok_or_else(|| Error::NotAThetaPair("H-side dimension has the wrong parity".into()))?;
    let mut v_gens = std::collections::BTreeSet::new();
    let mut w_gens = std::collections::BTreeSet::from([TwistGen::W]);
    for (s, _) in theta_psi.summands() {
        for (g, _) in s.rho.twist.iter() {
            match g.role {
                TwistRole::V => v_gens.insert(g),
                TwistRole::W => w_gens.insert(g),
            };
        }
    }
    for &v in &v_gens {
        for &w in &w_gens {
            let pair = TwistPair { v, w };
            if theta_parameter_with(psi, r, pair).ok().as_ref() == Some(theta_psi) {
                return Ok(build_embedding(psi, theta_psi, pair, r));
            }
        }
    }
    Err(Error::NotAThetaPair("no admissible twist pair maps the parameters onto each other".into()))
}

fn build_embedding(psi: &AParameter, theta_psi: &AParameter, pair: TwistPair, r: u32) -> ThetaEmbedding {
    let g = component_group(psi, false);
    let h = component_group(theta_psi, true);
    let joint = pair.joint();
    let n = psi.witt_n().expect("G-side parameter");
    let map = g
        .basis
        .iter()
        .map(|s| {
            let mut t = s.clone();
            t.rho.twist = t.rho.twist.mul(&joint);
            h.index_of(&t).expect("same-parity summands stay same-parity under the joint twist")
        })
        .collect();
    let extra = h.index_of(&extra_summand(psi.case(), pair, n, r)).expect("added summand has the parity of H");
    ThetaEmbedding { pair, n, r, map, extra }
}

impl ThetaEmbedding {
    /// Restriction of an `H`-side character to `𝒮_ψ`.
    pub fn restrict(&self, eta: &Character) -> Character {
        Character { values: self.map.iter().map(|&j| eta.values[j]).collect() }
    }
}

pub fn pull_back_packet(h_packet: &LabeledPacket, psi: &AParameter, r: u32) -> Result<LabeledPacket> {
    let emb = embed_component_groups(psi, &h_packet.parameter)
        .map_err(|e| Error::ParameterMismatch(format!("packet parameter is not a lift of psi: {e}")))?;
    if emb.r != r {
        return Err(Error::ParameterMismatch(format!("packet sits at level {}, not {r}", emb.r)));
    }
    let z = component_group(psi, false).z;
    let members = h_packet
        .members
        .iter()
        .map(|m| {
            let character = emb.restrict(&m.character);
            let inner_form = Some(character.eval(&z));
            Member { id: m.id.clone(), character, inner_form, lir: None }
        })
        .collect();
    LabeledPacket::new(psi.clone(), false, members)
}

/// The counting law: pulled-back members correspond one-to-one with the `H` packet.
pub fn packet_cardinality_check(h_packet: &LabeledPacket, pulled: &LabeledPacket) -> bool {
    let mut a: Vec<_> = h_packet.members.iter().map(|m| &m.id).collect();
    let mut b: Vec<_> = pulled.members.iter().map(|m| &m.id).collect();
    a.sort();
    b.sort();
    a == b
}

/// Transports an `H`-side packet to the lift at level `r_new` and/or with another twist pair,
/// matching basis vectors through `ψ`.
pub fn transport_packet(
    h_packet: &LabeledPacket,
    psi: &AParameter,
    r_new: u32,
    pair_new: TwistPair,
) -> Result<LabeledPacket> {
    let old = embed_component_groups(psi, &h_packet.parameter)?;
    let target = theta_parameter_with(psi, r_new, pair_new)?;
    let new = build_embedding(psi, &target, pair_new, r_new);
    let rank = component_group(&target, true).rank();
    let members = h_packet
        .members
        .iter()
        .map(|m| {
            let mut values = vec![crate::arith::Sign::Plus; rank];
            for (i, &j) in new.map.iter().enumerate() {
                values[j] = m.character.values[old.map[i]];
            }
            values[new.extra] = m.character.values[old.extra];
            Member { id: m.id.clone(), character: Character { values }, inner_form: m.inner_form, lir: None }
        })
        .collect();
    LabeledPacket::new(target, h_packet.quotient, members)
}
