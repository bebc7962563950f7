use std::fmt;

use super::SatakeDiagram;
use crate::error::{Error, Result};
use crate::root_system::{Family, SimpleType, TypeLabel};

/// A catalog family and whether it takes a type or an integer parameter.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub parameter: &'static str,
    pub summary: &'static str,
}

pub fn catalog_names() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry { name: "split-<X>", parameter: "type such as A3", summary: "split real form, no shading, no arrows" },
        CatalogEntry { name: "compact-<X>", parameter: "type such as G2", summary: "compact real form, every node shaded" },
        CatalogEntry { name: "complex-<X>", parameter: "type such as B2", summary: "X as a real Lie algebra: X ⊥ X with ω swapping the copies" },
        CatalogEntry { name: "AIV", parameter: "--n >= 1", summary: "su(n,1) on A_n" },
        CatalogEntry { name: "BII", parameter: "--n even >= 4", summary: "so(n,1) on B_{n/2}" },
        CatalogEntry { name: "DII", parameter: "--n odd >= 5", summary: "so(n,1) on D_{(n+1)/2}" },
        CatalogEntry { name: "CII", parameter: "--n >= 1", summary: "sp(n,1) on C_{n+1}" },
        CatalogEntry { name: "FII", parameter: "none", summary: "f4(-20) on F4" },
    ]
}

/// A catalog form name with its integer parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpec {
    pub name: String,
    pub n: Option<usize>,
}

impl fmt::Display for FormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n {
            Some(n) => write!(f, "{}({n})", self.name),
            None => f.write_str(&self.name),
        }
    }
}

fn spec(name: &str, n: Option<usize>) -> FormSpec {
    FormSpec { name: name.to_string(), n }
}

/// Every catalog form whose complex rank is at most `max_rank`.
pub fn standard_forms(max_rank: usize) -> Vec<FormSpec> {
    let mut types: Vec<String> = Vec::new();
    for l in 1..=max_rank {
        types.push(format!("A{l}"));
    }
    for l in 2..=max_rank {
        types.push(format!("B{l}"));
        types.push(format!("C{l}"));
    }
    for l in 4..=max_rank {
        types.push(format!("D{l}"));
    }
    for l in 6..=max_rank.min(8) {
        types.push(format!("E{l}"));
    }
    if max_rank >= 4 {
        types.push("F4".into());
    }
    if max_rank >= 2 {
        types.push("G2".into());
    }
    let mut out = Vec::new();
    for t in &types {
        out.push(spec(&format!("split-{t}"), None));
        out.push(spec(&format!("compact-{t}"), None));
    }
    for t in &types {
        let rank: usize = t[1..].parse().expect("rank");
        if 2 * rank <= max_rank {
            out.push(spec(&format!("complex-{t}"), None));
        }
    }
    for n in 2..=max_rank {
        out.push(spec("AIV", Some(n)));
    }
    for l in 2..=max_rank {
        out.push(spec("BII", Some(2 * l)));
    }
    for l in 3..=max_rank {
        out.push(spec("DII", Some(2 * l - 1)));
    }
    for n in 1..max_rank {
        out.push(spec("CII", Some(n)));
    }
    if max_rank >= 4 {
        out.push(spec("FII", None));
    }
    out
}

fn need_n(name: &str, n: Option<usize>) -> Result<usize> {
    n.ok_or_else(|| Error::Domain(format!("{name} needs an integer parameter --n")))
}

fn parse_type_suffix(rest: &str, n: Option<usize>) -> Result<TypeLabel> {
    let rest = rest.trim_start_matches('(').trim_end_matches(')');
    let t: SimpleType = if rest.len() == 1 {
        format!("{rest}{}", need_n(rest, n)?).parse()?
    } else {
        rest.parse()?
    };
    Ok(TypeLabel::simple(t))
}

fn unknown(name: &str) -> Error {
    let available: Vec<&str> = catalog_names().iter().map(|e| e.name).collect();
    Error::UnknownForm { name: name.to_string(), available: available.join(", ") }
}

/// Looks up a catalog diagram; `n` is the integer parameter where needed.
pub fn catalog(name: &str, n: Option<usize>) -> Result<SatakeDiagram> {
    let key = name.trim();
    let lower = key.to_ascii_lowercase();
    for (prefix, kind) in [("split", 0), ("compact", 1), ("complex", 2)] {
        if let Some(rest) = lower.strip_prefix(prefix) {
            let rest = rest.trim_start_matches(['-', '_']);
            if rest.is_empty() {
                return Err(unknown(key));
            }
            let label = parse_type_suffix(&rest.to_ascii_uppercase(), n)?;
            let t = label.0[0];
            let title = format!("{prefix}-{t}");
            return match kind {
                0 => SatakeDiagram::new(&title, &label, &[], &[]),
                1 => {
                    let all: Vec<usize> = (0..t.rank).collect();
                    SatakeDiagram::new(&title, &label, &all, &[])
                }
                _ => {
                    let doubled = TypeLabel(vec![t, t]);
                    let arrows: Vec<(usize, usize)> = (0..t.rank).map(|i| (i, i + t.rank)).collect();
                    SatakeDiagram::new(&title, &doubled, &[], &arrows)
                }
            };
        }
    }
    let form = match lower.as_str() {
        "aiv" | "su" => "AIV",
        "bii" => "BII",
        "dii" => "DII",
        "so" => match need_n(key, n)? % 2 {
            0 => "BII",
            _ => "DII",
        },
        "cii" | "sp" => "CII",
        "fii" | "f4(-20)" => "FII",
        _ => return Err(unknown(key)),
    };
    let simple = |f: Family, r: usize| -> Result<TypeLabel> { Ok(TypeLabel::simple(SimpleType::new(f, r)?)) };
    match form {
        "AIV" => {
            let l = need_n(form, n)?;
            let label = simple(Family::A, l)?;
            let title = format!("AIV({l})");
            if l == 1 {
                SatakeDiagram::new(&title, &label, &[], &[])
            } else {
                let shaded: Vec<usize> = (1..l - 1).collect();
                SatakeDiagram::new(&title, &label, &shaded, &[(0, l - 1)])
            }
        }
        "BII" => {
            let m = need_n(form, n)?;
            if m % 2 != 0 || m < 4 {
                return Err(Error::Domain("BII needs an even n >= 4".into()));
            }
            let l = m / 2;
            let shaded: Vec<usize> = (1..l).collect();
            SatakeDiagram::new(&format!("BII({m})"), &simple(Family::B, l)?, &shaded, &[])
        }
        "DII" => {
            let m = need_n(form, n)?;
            if m % 2 != 1 || m < 5 {
                return Err(Error::Domain("DII needs an odd n >= 5".into()));
            }
            let l = (m + 1) / 2;
            let shaded: Vec<usize> = (1..l).collect();
            SatakeDiagram::new(&format!("DII({m})"), &simple(Family::D, l)?, &shaded, &[])
        }
        "CII" => {
            let m = need_n(form, n)?;
            if m < 1 {
                return Err(Error::Domain("CII needs n >= 1".into()));
            }
            let l = m + 1;
            let shaded: Vec<usize> = (0..l).filter(|&i| i != 1).collect();
            SatakeDiagram::new(&format!("CII({m})"), &simple(Family::C, l)?, &shaded, &[])
        }
        _ => SatakeDiagram::new("FII", &simple(Family::F, 4)?, &[1, 2, 3], &[]),
    }
}
