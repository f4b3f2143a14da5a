//! Labeled packets: abstract members tagged with component-group characters.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::Sign;
use crate::error::{Error, Result};
use crate::group::{component_group, enumerate_characters, Character, ComponentGroup};
use crate::param::AParameter;

/// Bookkeeping attached by [`crate::labels::induct_packet`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LirRecord {
    pub parent: String,
    pub a_tau_index: usize,
    pub a_tau_value: Sign,
    pub predicted_eigenvalue: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub id: String,
    pub character: Character,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner_form: Option<Sign>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lir: Option<LirRecord>,
}

impl Member {
    pub fn new(id: impl Into<String>, character: Character) -> Member {
        Member { id: id.into(), character, inner_form: None, lir: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledPacket {
    pub parameter: AParameter,
    /// Characters live on the quotient by `z` when set.
    pub quotient: bool,
    pub members: Vec<Member>,
}

#[derive(Deserialize)]
struct PacketJson {
    parameter: AParameter,
    #[serde(default)]
    quotient: Option<bool>,
    members: Vec<Member>,
}

impl<'de> Deserialize<'de> for LabeledPacket {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<LabeledPacket, D::Error> {
        let raw = PacketJson::deserialize(d)?;
        let quotient = raw.quotient.unwrap_or(raw.parameter.side() == crate::param::Side::H);
        LabeledPacket::new(raw.parameter, quotient, raw.members).map_err(serde::de::Error::custom)
    }
}

impl LabeledPacket {
    pub fn new(parameter: AParameter, quotient: bool, members: Vec<Member>) -> Result<LabeledPacket> {
        let p = LabeledPacket { parameter, quotient, members };
        p.validate()?;
        Ok(p)
    }

    /// One member per character of the (quotient) component group, named `e<index>`.
    pub fn all_characters(parameter: AParameter, quotient: bool, bound: usize) -> Result<LabeledPacket> {
        let g = component_group(&parameter, quotient);
        let members = enumerate_characters(&g, bound)?
            .into_iter()
            .map(|c| Member::new(format!("e{}", c.index()), c))
            .collect();
        LabeledPacket::new(parameter, quotient, members)
    }

    pub fn group(&self) -> ComponentGroup {
        component_group(&self.parameter, self.quotient)
    }

    pub fn validate(&self) -> Result<()> {
        let g = self.group();
        let mut ids = BTreeSet::new();
        for m in &self.members {
            if !ids.insert(m.id.as_str()) {
                return Err(Error::InvalidPacket(format!("duplicate member id `{}`", m.id)));
            }
            if m.character.rank() != g.rank() {
                return Err(Error::InvalidPacket(format!(
                    "member `{}` has {} character values, the component group has rank {}",
                    m.id,
                    m.character.rank(),
                    g.rank()
                )));
            }
            if !g.admits(&m.character) {
                return Err(Error::InvalidPacket(format!("member `{}` is not trivial on z", m.id)));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, id: &str) -> Option<&Member> {
        self.members.iter().find(|m| m.id == id)
    }

    /// Whether distinct members carry distinct characters.
    pub fn labels_injective(&self) -> bool {
        let set: BTreeSet<_> = self.members.iter().map(|m| &m.character).collect();
        set.len() == self.members.len()
    }

    /// Characters as a sorted multiset, for comparisons that ignore member names.
    pub fn label_multiset(&self) -> Vec<Character> {
        let mut v: Vec<_> = self.members.iter().map(|m| m.character.clone()).collect();
        v.sort();
        v
    }
}
