//! Law descriptors: `geometric:c=1,r=0.5,N=30`, `power:gamma=1.2,N=400`,
//! `stolz:eta=2,phase=0,c=1,r=0.5,N=30`, `file:zeros.txt`, `finite:zeros.txt`.

use std::collections::BTreeMap;
use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use blaschke_lab_core::{
    gen_geometric, gen_power, gen_stolz, DiskPoint, PhaseRule, StolzDomain, ZeroSequence,
};

pub const DEFAULT_COUNT: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub enum Descriptor {
    Power {
        gamma: f64,
        count: Option<usize>,
        phases: PhaseRule,
    },
    Geometric {
        c: f64,
        r: f64,
        count: Option<usize>,
        phases: PhaseRule,
    },
    Stolz {
        phase: f64,
        eta: f64,
        base: Box<Descriptor>,
    },
    /// Zeros read from a file, continuation unknown.
    File { path: String },
    /// Zeros read from a file, and these are all of them.
    Finite { path: String },
}

fn parse_phases(value: Option<&str>) -> Result<PhaseRule> {
    match value {
        None | Some("radial") => Ok(PhaseRule::Radial),
        Some("spread") => Ok(PhaseRule::Spread),
        Some(other) => bail!("unknown phase rule '{other}' (expected radial or spread)"),
    }
}

fn keyed(body: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for part in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value, got '{part}'"))?;
        if map
            .insert(k.trim().to_string(), v.trim().to_string())
            .is_some()
        {
            bail!("duplicate key '{}'", k.trim());
        }
    }
    Ok(map)
}

fn take_f64(map: &mut BTreeMap<String, String>, key: &str) -> Result<Option<f64>> {
    map.remove(key)
        .map(|v| {
            v.parse::<f64>()
                .with_context(|| format!("invalid number for {key}: '{v}'"))
        })
        .transpose()
}

fn take_count(map: &mut BTreeMap<String, String>) -> Result<Option<usize>> {
    map.remove("N")
        .map(|v| {
            v.parse::<usize>()
                .with_context(|| format!("invalid zero count N: '{v}'"))
        })
        .transpose()
}

fn base_law(map: &mut BTreeMap<String, String>) -> Result<Descriptor> {
    let count = take_count(map)?;
    let phases = parse_phases(map.remove("phases").as_deref())?;
    if let Some(gamma) = take_f64(map, "gamma")? {
        return Ok(Descriptor::Power {
            gamma,
            count,
            phases,
        });
    }
    match (take_f64(map, "c")?, take_f64(map, "r")?) {
        (Some(c), Some(r)) => Ok(Descriptor::Geometric {
            c,
            r,
            count,
            phases,
        }),
        (None, Some(r)) => Ok(Descriptor::Geometric {
            c: 1.0,
            r,
            count,
            phases,
        }),
        _ => bail!("expected gamma=... (power law) or c=...,r=... (geometric law)"),
    }
}

fn no_leftovers(map: BTreeMap<String, String>, law: &str) -> Result<()> {
    if let Some(k) = map.keys().next() {
        bail!("unknown key '{k}' for {law} law");
    }
    Ok(())
}

impl Descriptor {
    pub fn parse(text: &str) -> Result<Self> {
        let (kind, body) = text.split_once(':').unwrap_or((text, ""));
        match kind.trim() {
            "file" => Ok(Descriptor::File {
                path: body.to_string(),
            }),
            "finite" => Ok(Descriptor::Finite {
                path: body.to_string(),
            }),
            "power" | "geometric" => {
                let mut map = keyed(body)?;
                let law = base_law(&mut map)?;
                let matches = matches!(
                    (&law, kind.trim()),
                    (Descriptor::Power { .. }, "power")
                        | (Descriptor::Geometric { .. }, "geometric")
                );
                if !matches {
                    bail!("parameters do not match the {kind} law");
                }
                no_leftovers(map, kind)?;
                Ok(law)
            }
            "stolz" => {
                let mut map = keyed(body)?;
                let eta = take_f64(&mut map, "eta")?.unwrap_or(2.0);
                let phase = take_f64(&mut map, "phase")?.unwrap_or(0.0);
                let base = base_law(&mut map)?;
                no_leftovers(map, "stolz")?;
                Ok(Descriptor::Stolz {
                    phase,
                    eta,
                    base: Box::new(base),
                })
            }
            other => bail!(
                "unknown sequence law '{other}' (expected power, geometric, stolz, file or finite)"
            ),
        }
    }

    /// Builds the zero sequence; `count_override` (the `--N` flag) wins over `N=` in the descriptor.
    pub fn build(&self, count_override: Option<usize>) -> Result<ZeroSequence> {
        let count = |c: &Option<usize>| count_override.or(*c).unwrap_or(DEFAULT_COUNT);
        let seq = match self {
            Descriptor::Power {
                gamma,
                count: c,
                phases,
            } => gen_power(*gamma, count(c), *phases)?,
            Descriptor::Geometric {
                c,
                r,
                count: n,
                phases,
            } => gen_geometric(*c, *r, count(n), *phases)?,
            Descriptor::Stolz { phase, eta, base } => {
                let domain = StolzDomain::at_angle(*phase, *eta)?;
                gen_stolz(&domain, &base.build(count_override)?)?
            }
            Descriptor::File { path } | Descriptor::Finite { path } => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
                let mut points: Vec<DiskPoint> = ZeroSequence::parse_points(&text)?;
                if let Some(n) = count_override {
                    if n > points.len() {
                        bail!("--N {n} exceeds the {} zeros in {path}", points.len());
                    }
                    points.truncate(n);
                }
                if matches!(self, Descriptor::File { .. }) {
                    ZeroSequence::explicit(points)?
                } else {
                    ZeroSequence::finite(points)?
                }
            }
        };
        Ok(seq)
    }
}
