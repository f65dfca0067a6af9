//! Named constructions: parsing, building, and their expected `f` lines.

use std::fmt;
use std::path::PathBuf;

use super::srg::{SrgParams, SrgSource};
use super::{gen_cycle_power, gen_furedi, gen_gray_clique, gen_matching, gen_srg};
use crate::bounds::furedi::furedi_line;
use crate::bounds::Line;
use crate::crg::Crg;
use crate::error::{param, Error, Result};
use crate::field::prime_power;
use crate::forbid::{forbids_k2t, ForbParameter};
use crate::graph::SimpleGraph;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConstructionSpec {
    GrayClique { w: usize, b: usize },
    Matching { t: usize },
    CyclePower { k: usize, r: usize },
    Paley { q: u32 },
    TriangularComplement { m: usize },
    RookComplement { m: usize },
    PetersenComplement,
    SrgFile { path: PathBuf, params: SrgParams },
    Furedi { q: u32, t: usize },
}

/// Built-in SRG generators, in increasing order.
pub const BUILTIN_SRGS: [ConstructionSpec; 6] = [
    ConstructionSpec::PetersenComplement,
    ConstructionSpec::Paley { q: 13 },
    ConstructionSpec::TriangularComplement { m: 6 },
    ConstructionSpec::RookComplement { m: 4 },
    ConstructionSpec::Paley { q: 17 },
    ConstructionSpec::Paley { q: 25 },
];

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl ConstructionSpec {
    /// Parses `name` with `key=value` parameters, e.g. `paley` with `q=13`.
    pub fn parse(name: &str, params: &[(String, String)]) -> Result<Self> {
        let get = |key: &str| -> Result<&str> {
            params
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| param(format!("{name} needs parameter `{key}`")))
        };
        let num = |key: &str| -> Result<usize> {
            let raw = get(key)?;
            raw.parse().map_err(|_| param(format!("parameter `{key}` must be a nonnegative integer, got `{raw}`")))
        };
        let spec = match name {
            "gray_clique" => ConstructionSpec::GrayClique { w: num("w")?, b: num("b")? },
            "matching" => ConstructionSpec::Matching { t: num("t")? },
            "cycle_power" => ConstructionSpec::CyclePower { k: num("k")?, r: num("r")? },
            "paley" => ConstructionSpec::Paley { q: num("q")? as u32 },
            "triangular_complement" => ConstructionSpec::TriangularComplement { m: num("m")? },
            "rook_complement" => ConstructionSpec::RookComplement { m: num("m")? },
            "petersen_complement" => ConstructionSpec::PetersenComplement,
            "srg_file" => ConstructionSpec::SrgFile {
                path: PathBuf::from(get("path")?),
                params: SrgParams::new(num("k")?, num("d")?, num("lambda")?, num("mu")?),
            },
            "furedi" => ConstructionSpec::Furedi { q: num("q")? as u32, t: num("t")? },
            other => return Err(param(format!("unknown construction `{other}`"))),
        };
        Ok(spec)
    }

    /// Parses the call form `name(a,b,...)` with positional parameters, or a
    /// bare name for parameterless constructions.
    pub fn parse_call(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, args) = match text.split_once('(') {
            Some((name, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(|| param(format!("unbalanced parentheses in `{text}`")))?;
                let args: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
                (name.trim(), args)
            }
            None => (text, Vec::new()),
        };
        let keys: &[&str] = match name {
            "gray_clique" => &["w", "b"],
            "matching" => &["t"],
            "cycle_power" => &["k", "r"],
            "paley" => &["q"],
            "triangular_complement" | "rook_complement" => &["m"],
            "petersen_complement" => &[],
            "furedi" => &["q", "t"],
            "srg_file" => &["path", "k", "d", "lambda", "mu"],
            other => return Err(param(format!("unknown construction `{other}`"))),
        };
        if args.len() != keys.len() {
            return Err(param(format!("{name} takes {} parameters, got {}", keys.len(), args.len())));
        }
        let pairs: Vec<(String, String)> = keys.iter().zip(args).map(|(k, v)| (k.to_string(), v.to_string())).collect();
        Self::parse(name, &pairs)
    }

    pub fn build(&self) -> Result<Crg> {
        match self {
            ConstructionSpec::GrayClique { w, b } => gen_gray_clique(*w, *b),
            ConstructionSpec::Matching { t } => gen_matching(*t),
            ConstructionSpec::CyclePower { k, r } => gen_cycle_power(*k, *r),
            ConstructionSpec::Furedi { q, t } => gen_furedi(*q, *t),
            _ => Ok(gen_srg(&self.srg_source()?.expect("SRG kinds have a source"))?.0),
        }
    }

    fn srg_source(&self) -> Result<Option<SrgSource>> {
        Ok(Some(match self {
            ConstructionSpec::Paley { q } => SrgSource::Paley(*q),
            ConstructionSpec::TriangularComplement { m } => SrgSource::TriangularComplement(*m),
            ConstructionSpec::RookComplement { m } => SrgSource::RookComplement(*m),
            ConstructionSpec::PetersenComplement => SrgSource::PetersenComplement,
            ConstructionSpec::SrgFile { path, params } => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parameter(format!("cannot read {}: {e}", path.display())))?;
                SrgSource::File { path: path.clone(), graph: SimpleGraph::parse(&text, false)?, params: *params }
            }
            _ => return Ok(None),
        }))
    }

    /// Parameters the SRG kinds promise, without building the graph.
    pub fn srg_params(&self) -> Option<SrgParams> {
        match *self {
            ConstructionSpec::Paley { q } => {
                let n = q as usize;
                Some(SrgParams::new(n, (n - 1) / 2, n.saturating_sub(5) / 4, (n - 1) / 4))
            }
            ConstructionSpec::TriangularComplement { m } if m >= 4 => {
                Some(SrgParams::new(choose2(m), choose2(m - 2), choose2(m - 4), choose2(m - 3)))
            }
            ConstructionSpec::RookComplement { m } if m >= 2 => {
                Some(SrgParams::new(m * m, (m - 1) * (m - 1), (m - 2) * (m - 2), (m - 1) * (m - 2)))
            }
            ConstructionSpec::PetersenComplement => Some(SrgParams::new(10, 6, 3, 4)),
            ConstructionSpec::SrgFile { params, .. } => Some(params),
            _ => None,
        }
    }

    /// The affine `f` line the construction is known to have.
    pub fn expected_line(&self) -> Result<Line> {
        let line = match *self {
            ConstructionSpec::GrayClique { w, b } => {
                let k = (w + b) as i64;
                Line::ratio(b as i64, w as i64 - b as i64, k * k)
            }
            ConstructionSpec::Matching { t } => Line::ratio(1, 0, t as i64 + 1),
            ConstructionSpec::CyclePower { k, r } => Line::ratio(1, 2 * r as i64 - 1, k as i64),
            ConstructionSpec::Furedi { q, t } => furedi_line(q, t)?,
            _ => {
                let params = self.srg_params().ok_or_else(|| param(format!("{self} has no SRG parameters")))?;
                srg_f_line(params)
            }
        };
        Ok(line)
    }

    /// Whether the construction's CRG forbids `K_{2,t}`. SRG kinds answer
    /// from their parameters; the rest are built and checked.
    pub fn forbids(&self, t: usize) -> Result<bool> {
        if let Some(params) = self.srg_params() {
            return Ok(params.eligible_for(t));
        }
        Ok(forbids_k2t(&self.build()?, ForbParameter::new(t)?))
    }
}

/// `1/k + ((k - d - 2)/k) p`.
pub fn srg_f_line(params: SrgParams) -> Line {
    let k = params.k as i64;
    Line::ratio(1, k - params.d as i64 - 2, k)
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionSpec::GrayClique { w, b } => write!(f, "gray_clique({w},{b})"),
            ConstructionSpec::Matching { t } => write!(f, "matching({t})"),
            ConstructionSpec::CyclePower { k, r } => write!(f, "cycle_power({k},{r})"),
            ConstructionSpec::Paley { q } => write!(f, "paley({q})"),
            ConstructionSpec::TriangularComplement { m } => write!(f, "triangular_complement({m})"),
            ConstructionSpec::RookComplement { m } => write!(f, "rook_complement({m})"),
            ConstructionSpec::PetersenComplement => f.write_str("petersen_complement"),
            ConstructionSpec::SrgFile { path, params } => {
                write!(f, "srg_file({},{},{},{},{})", path.display(), params.k, params.d, params.lambda, params.mu)
            }
            ConstructionSpec::Furedi { q, t } => write!(f, "furedi({q},{t})"),
        }
    }
}

/// Built-in constructions whose CRG forbids `K_{2,t}`: the trivial cliques,
/// the cycle square, the matching for odd `t`, eligible built-in SRGs, and
/// Füredi doubles for small `q`.
pub fn registry_for(t: usize) -> Result<Vec<ConstructionSpec>> {
    if t < 3 {
        return Err(param(format!("registry is defined for t >= 3, got {t}")));
    }
    let mut out = vec![
        ConstructionSpec::GrayClique { w: 1, b: 1 },
        ConstructionSpec::GrayClique { w: 0, b: t - 1 },
        ConstructionSpec::CyclePower { k: t + 5, r: 2 },
    ];
    if t % 2 == 1 {
        out.push(ConstructionSpec::Matching { t });
    }
    for spec in BUILTIN_SRGS {
        if spec.forbids(t)? {
            out.push(spec);
        }
    }
    let mut qs: Vec<u32> = (2..=16).filter(|&q| prime_power(q as u64).is_some()).collect();
    if (5..=8).contains(&t) {
        qs.extend(crate::bounds::furedi::furedi_feasible_q(t)?);
    }
    qs.sort_unstable();
    qs.dedup();
    out.extend(
        qs.into_iter()
            .filter(|&q| t >= 4 && (q as usize - 1).is_multiple_of(t - 1))
            .map(|q| ConstructionSpec::Furedi { q, t }),
    );
    Ok(out)
}
