//! JSON definition files: fixtures, machines and witnesses.
//!
//! Fixture file:
//! `{"fixtures": [{"label", "limit": "p/q", "gap": {"kind": "power",
//! "base": "p/q", "shift"?, "coeff"?: "p/q"} | {"kind": "machine",
//! "machine_id"}, "depth"?, "coerce_bits"?}]}`
//!
//! Machine file:
//! `{"machines": [{"id", "step_bound", "programs": [{"bits",
//! "behavior": "halt"|"diverge", "output"?}]}]}`
//!
//! Witness file:
//! `{"kind": "reflexive"|"affine"|"table"|"h1", "params": {...}, "d", "l",
//! "valid_from"?}` (constants are optional where the kind pins them).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::machine::{Behavior, PrefixFreeMachine, Program};
use crate::rational::{int, parse_rational, ratio};
use crate::real::{GapSchedule, LeftCEReal, DEFAULT_COERCE_BITS};
use crate::witness::{
    h1_witness, reflexive_witness, witness_from_stage_pair, QSWitness, WitnessFunction,
};

#[derive(Debug, Serialize, Deserialize)]
pub struct FixtureFile {
    pub fixtures: Vec<FixtureDef>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FixtureDef {
    pub label: String,
    pub limit: String,
    pub gap: GapDef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coerce_bits: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GapDef {
    /// `gap(n) = coeff · base^(n+shift)`.
    Power {
        base: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shift: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coeff: Option<String>,
    },
    /// Partial sums of the referenced machine's halting enumeration; the
    /// declared limit must match the full sum.
    Machine { machine_id: String },
    /// Interleaving transform of an earlier fixture in the same file (or
    /// a built-in); the declared limit must match the interleaved limit.
    /// The fixture's `coerce_bits` bounds the per-stage expansion length.
    H1 { of: String },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MachineFile {
    pub machines: Vec<MachineDef>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MachineDef {
    pub id: String,
    pub step_bound: u64,
    pub programs: Vec<ProgramDef>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ProgramDef {
    pub bits: String,
    pub behavior: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessDef {
    pub kind: String,
    #[serde(default)]
    pub params: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid_from: Option<String>,
}

pub fn parse_machine_file(text: &str) -> Result<Vec<PrefixFreeMachine>> {
    let file: MachineFile = serde_json::from_str(text)?;
    file.machines.iter().map(build_machine).collect()
}

pub fn build_machine(def: &MachineDef) -> Result<PrefixFreeMachine> {
    let mut programs = Vec::with_capacity(def.programs.len());
    for p in &def.programs {
        let bits: BitString = p.bits.parse()?;
        let behavior = match p.behavior.as_str() {
            "halt" => Behavior::Halt {
                output: p.output.as_deref().unwrap_or("").parse()?,
            },
            "diverge" => Behavior::Diverge,
            other => {
                return Err(Error::Parse(format!("unknown behavior {:?}", other)));
            }
        };
        programs.push(Program { bits, behavior });
    }
    PrefixFreeMachine::new(&def.id, def.step_bound, programs)
}

pub fn parse_fixture_file(
    text: &str,
    machines: &BTreeMap<String, PrefixFreeMachine>,
) -> Result<BTreeMap<String, LeftCEReal>> {
    let file: FixtureFile = serde_json::from_str(text)?;
    let mut out = standard_fixtures();
    let mut declared = BTreeMap::new();
    for def in &file.fixtures {
        let real = build_fixture(def, machines, &out)?;
        out.insert(def.label.clone(), real.clone());
        declared.insert(def.label.clone(), real);
    }
    Ok(declared)
}

pub fn build_fixture(
    def: &FixtureDef,
    machines: &BTreeMap<String, PrefixFreeMachine>,
    earlier: &BTreeMap<String, LeftCEReal>,
) -> Result<LeftCEReal> {
    let limit = parse_rational(&def.limit)?;
    let check_limit = |real: LeftCEReal, what: &str| -> Result<LeftCEReal> {
        let got = real.limit_or_err()?;
        if got != &limit {
            return Err(Error::Construction(format!(
                "declared limit {} does not match the {} value {}",
                limit, what, got
            )));
        }
        Ok(real)
    };
    let real = match &def.gap {
        GapDef::Power { base, shift, coeff } => {
            let base = parse_rational(base)?;
            let coeff = coeff
                .as_deref()
                .map(parse_rational)
                .transpose()?
                .unwrap_or_else(|| int(1));
            let gap = GapSchedule::new(coeff, base, shift.unwrap_or(0))?;
            LeftCEReal::fixture(&def.label, limit.clone(), gap)?
        }
        GapDef::Machine { machine_id } => {
            let machine = machines.get(machine_id).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "fixture references unknown machine {:?}",
                    machine_id
                ))
            })?;
            check_limit(machine.omega_real()?, "machine sum")?
        }
        GapDef::H1 { of } => {
            let inner = earlier.get(of).ok_or_else(|| {
                Error::InvalidInput(format!("fixture references unknown fixture {:?}", of))
            })?;
            let coerce = def.coerce_bits.unwrap_or(DEFAULT_COERCE_BITS);
            check_limit(inner.interleave_transform(coerce)?, "interleaved")?
        }
    };
    real.validate(def.depth.unwrap_or(crate::real::DEFAULT_CHECK_DEPTH))?;
    Ok(real)
}

/// Builds a witness from its definition; fixture-dependent kinds resolve
/// their parameters against the provided fixture set.
pub fn build_witness(
    def: &WitnessDef,
    fixtures: &BTreeMap<String, LeftCEReal>,
    bit_depth: u64,
) -> Result<QSWitness> {
    let mut w = match def.kind.as_str() {
        "reflexive" => reflexive_witness(),
        "affine" => {
            let slope = parse_rational(def.params["slope"].as_str().unwrap_or("1/1"))?;
            let intercept = parse_rational(def.params["intercept"].as_str().unwrap_or("0/1"))?;
            QSWitness::new(
                WitnessFunction::Affine { slope, intercept },
                def.d.unwrap_or(1),
                def.l.unwrap_or(1),
            )?
        }
        "table" => {
            let pairs = def.params["pairs"]
                .as_array()
                .ok_or_else(|| Error::Parse("table witness needs params.pairs".into()))?
                .iter()
                .map(|entry| {
                    let x = parse_rational(entry[0].as_str().unwrap_or_default())?;
                    let y = parse_rational(entry[1].as_str().unwrap_or_default())?;
                    Ok((x, y))
                })
                .collect::<Result<Vec<_>>>()?;
            QSWitness::new(
                WitnessFunction::Table { pairs },
                def.d.unwrap_or(1),
                def.l.unwrap_or(1),
            )?
        }
        "h1" => {
            let label = def.params["alpha"]
                .as_str()
                .ok_or_else(|| Error::Parse("h1 witness needs params.alpha".into()))?;
            let alpha = fixtures.get(label).ok_or_else(|| {
                Error::InvalidInput(format!("h1 witness references unknown fixture {:?}", label))
            })?;
            h1_witness(alpha, bit_depth)?
        }
        "sequence_step" => {
            let get = |key: &str| -> Result<&LeftCEReal> {
                let label = def.params[key].as_str().ok_or_else(|| {
                    Error::Parse(format!("sequence_step witness needs params.{}", key))
                })?;
                fixtures
                    .get(label)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown fixture {:?}", label)))
            };
            let alpha = get("alpha")?;
            let beta = get("beta")?;
            let depth = def.params["depth"].as_u64().unwrap_or(32);
            witness_from_stage_pair(alpha, beta, def.d.unwrap_or(2), def.l.unwrap_or(1), depth)?
        }
        "sum" | "compose" => {
            let parts = def.params["of"]
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| {
                    Error::Parse(format!("{} witness needs params.of = [w, w]", def.kind))
                })?;
            let sub: Vec<QSWitness> = parts
                .iter()
                .map(|v| {
                    let inner: WitnessDef = serde_json::from_value(v.clone())?;
                    build_witness(&inner, fixtures, bit_depth)
                })
                .collect::<Result<_>>()?;
            if def.kind == "sum" {
                crate::witness::join(&sub[0], &sub[1])?
            } else {
                crate::witness::compose(&sub[0], &sub[1])?
            }
        }
        other => return Err(Error::Parse(format!("unknown witness kind {:?}", other))),
    };
    if let Some(d) = def.d {
        w.d = d;
    }
    if let Some(l) = def.l {
        w.ell = l;
    }
    if let Some(vf) = &def.valid_from {
        w.valid_from = Some(parse_rational(vf)?);
    }
    Ok(w)
}

/// The toy machine with halting programs `0` and `10` (and a diverging
/// `11`): halting probability 3/4.
pub fn toy_machine_34() -> PrefixFreeMachine {
    PrefixFreeMachine::new(
        "toy34",
        1 << 10,
        vec![
            Program {
                bits: "0".parse().expect("bits"),
                behavior: Behavior::Halt {
                    output: "1".parse().expect("bits"),
                },
            },
            Program {
                bits: "10".parse().expect("bits"),
                behavior: Behavior::Halt {
                    output: "11".parse().expect("bits"),
                },
            },
            Program {
                bits: "11".parse().expect("bits"),
                behavior: Behavior::Diverge,
            },
        ],
    )
    .expect("the toy table is prefix-free")
}

/// Standard fixture set: HALF (1/2), THIRD (1/3), H1HALF (7/12), OMEGA34
/// (toy machine, 3/4) and H1OMEGA (31/48).
pub fn standard_fixtures() -> BTreeMap<String, LeftCEReal> {
    let mut out = BTreeMap::new();
    let half = LeftCEReal::fixture(
        "HALF",
        ratio(1, 2),
        GapSchedule::new(int(1), ratio(1, 2), 2).expect("valid schedule"),
    )
    .expect("valid fixture");
    let third = LeftCEReal::fixture(
        "THIRD",
        ratio(1, 3),
        GapSchedule::new(ratio(1, 3), ratio(1, 4), 0).expect("valid schedule"),
    )
    .expect("valid fixture");
    let omega = toy_machine_34().omega_real().expect("finite sum");
    let h1half = half
        .interleave_transform(DEFAULT_COERCE_BITS)
        .expect("in range");
    let h1omega = omega
        .interleave_transform(DEFAULT_COERCE_BITS)
        .expect("in range");
    out.insert("HALF".into(), half);
    out.insert("THIRD".into(), third);
    out.insert("H1HALF".into(), h1half);
    out.insert("OMEGA34".into(), omega);
    out.insert("H1OMEGA".into(), h1omega);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_fixture_limits() {
        let fx = standard_fixtures();
        assert_eq!(fx["HALF"].exact_limit().unwrap(), &ratio(1, 2));
        assert_eq!(fx["THIRD"].exact_limit().unwrap(), &ratio(1, 3));
        assert_eq!(fx["H1HALF"].exact_limit().unwrap(), &ratio(7, 12));
        assert_eq!(fx["OMEGA34"].exact_limit().unwrap(), &ratio(3, 4));
        assert_eq!(fx["H1OMEGA"].exact_limit().unwrap(), &ratio(31, 48));
        for real in fx.values() {
            real.validate(64).unwrap();
        }
    }

    #[test]
    fn fixture_file_roundtrip() {
        let text = r#"{
            "fixtures": [
                {"label": "HALF", "limit": "1/2",
                 "gap": {"kind": "power", "base": "1/2", "shift": 2}},
                {"label": "THIRD", "limit": "1/3",
                 "gap": {"kind": "power", "base": "1/4", "coeff": "1/3"}},
                {"label": "OMEGA34", "limit": "3/4",
                 "gap": {"kind": "machine", "machine_id": "toy34"}}
            ]
        }"#;
        let mut machines = BTreeMap::new();
        machines.insert("toy34".to_string(), toy_machine_34());
        let fixtures = parse_fixture_file(text, &machines).unwrap();
        assert_eq!(fixtures["HALF"].stage(0), ratio(1, 4));
        assert_eq!(fixtures["THIRD"].stage(1), ratio(1, 4));
        assert_eq!(fixtures["OMEGA34"].exact_limit().unwrap(), &ratio(3, 4));
    }

    #[test]
    fn machine_file_parses() {
        let text = r#"{
            "machines": [
                {"id": "toy34", "step_bound": 1024, "programs": [
                    {"bits": "0", "behavior": "halt", "output": "1"},
                    {"bits": "10", "behavior": "halt", "output": "11"},
                    {"bits": "11", "behavior": "diverge"}
                ]}
            ]
        }"#;
        let machines = parse_machine_file(text).unwrap();
        assert_eq!(machines.len(), 1);
        assert_eq!(machines[0].omega_t(&int(1)).unwrap(), ratio(3, 4));
    }

    #[test]
    fn mismatched_machine_limit_rejected() {
        let def = FixtureDef {
            label: "OMEGA34".into(),
            limit: "2/3".into(),
            gap: GapDef::Machine {
                machine_id: "toy34".into(),
            },
            depth: None,
            coerce_bits: None,
        };
        let mut machines = BTreeMap::new();
        machines.insert("toy34".to_string(), toy_machine_34());
        assert!(build_fixture(&def, &machines, &BTreeMap::new()).is_err());
    }

    #[test]
    fn interleaved_fixtures_from_files() {
        let text = r#"{
            "fixtures": [
                {"label": "OMEGA58", "limit": "5/8",
                 "gap": {"kind": "power", "base": "1/2", "shift": 1}},
                {"label": "H1OMEGA58", "limit": "115/192",
                 "gap": {"kind": "h1", "of": "OMEGA58"}, "coerce_bits": 96},
                {"label": "H1HALF2", "limit": "7/12",
                 "gap": {"kind": "h1", "of": "HALF"}}
            ]
        }"#;
        let fixtures = parse_fixture_file(text, &BTreeMap::new()).unwrap();
        // 5/8 = 0.101 interleaves to 1/3 + 1/4 + 1/64 = 115/192, checked
        // against the declared value by the loader itself.
        assert_eq!(
            fixtures["H1OMEGA58"].exact_limit().unwrap(),
            &ratio(115, 192)
        );
        assert_eq!(fixtures["H1HALF2"].exact_limit().unwrap(), &ratio(7, 12));
        // A wrong declared limit is rejected.
        let bad = r#"{
            "fixtures": [
                {"label": "X", "limit": "1/2",
                 "gap": {"kind": "h1", "of": "HALF"}}
            ]
        }"#;
        assert!(parse_fixture_file(bad, &BTreeMap::new()).is_err());
    }

    #[test]
    fn witness_definitions() {
        let fixtures = standard_fixtures();
        let def: WitnessDef =
            serde_json::from_str(r#"{"kind": "h1", "params": {"alpha": "HALF"}}"#).unwrap();
        let w = build_witness(&def, &fixtures, 4096).unwrap();
        assert_eq!((w.d, w.ell), (1, 4));
        let def: WitnessDef = serde_json::from_str(
            r#"{"kind": "affine",
                "params": {"slope": "1/1", "intercept": "-1/3"}, "d": 2, "l": 1}"#,
        )
        .unwrap();
        let w = build_witness(&def, &fixtures, 64).unwrap();
        assert_eq!((w.d, w.ell), (2, 1));
        let def: WitnessDef = serde_json::from_str(r#"{"kind": "reflexive"}"#).unwrap();
        let w = build_witness(&def, &fixtures, 64).unwrap();
        assert_eq!((w.d, w.ell), (2, 1));
        // Step witness over stage pairs of two fixtures.
        let def: WitnessDef = serde_json::from_str(
            r#"{"kind": "sequence_step",
                "params": {"alpha": "HALF", "beta": "HALF", "depth": 16},
                "d": 2, "l": 1}"#,
        )
        .unwrap();
        let w = build_witness(&def, &fixtures, 64).unwrap();
        assert!(matches!(w.f, WitnessFunction::SequenceStep { .. }));
        // Recursive composition; constants follow the algebra.
        let def: WitnessDef = serde_json::from_str(
            r#"{"kind": "compose", "params": {"of": [
                {"kind": "reflexive"},
                {"kind": "affine", "params": {"slope": "1/1", "intercept": "0/1"},
                 "d": 3, "l": 2}
            ]}}"#,
        )
        .unwrap();
        let w = build_witness(&def, &fixtures, 64).unwrap();
        assert_eq!((w.d, w.ell), (12, 2));
    }
}
