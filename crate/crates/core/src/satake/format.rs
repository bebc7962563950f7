//! Text format for Satake diagrams.
//!
//! ```text
//! # comment
//! type=C rank=3; shaded=0,2; arrows=;
//! type=A2+A2; arrows=0-2,1-3; name=complex A2;
//! ```
//!
//! Clauses are separated by `;` or newlines and hold whitespace-separated
//! `key=value` fields. `type` is a family letter with `rank`, or a full label
//! such as `E6` or `A2+A2`. Indices are 0-based in the simple-root order of the
//! standard model.

use super::SatakeDiagram;
use crate::error::{Error, Result};
use crate::root_system::{SimpleType, TypeLabel};

fn indices(value: &str) -> Result<Vec<usize>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad index `{s}`"))))
        .collect()
}

fn pairs(value: &str) -> Result<Vec<(usize, usize)>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (a, b) = s
                .split_once(['-', ':'])
                .ok_or_else(|| Error::Parse(format!("arrow `{s}` must look like i-j")))?;
            let a = a.trim().parse().map_err(|_| Error::Parse(format!("bad arrow `{s}`")))?;
            let b = b.trim().parse().map_err(|_| Error::Parse(format!("bad arrow `{s}`")))?;
            Ok((a, b))
        })
        .collect()
}

pub fn parse_diagram(text: &str) -> Result<SatakeDiagram> {
    let mut type_text: Option<String> = None;
    let mut rank: Option<usize> = None;
    let mut shaded = Vec::new();
    let mut arrows = Vec::new();
    let mut name: Option<String> = None;
    let body: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(";");
    for clause in body.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        if let Some(n) = clause.strip_prefix("name=") {
            name = Some(n.trim().to_string());
            continue;
        }
        for field in clause.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, found `{field}`")))?;
            match key {
                "type" => type_text = Some(value.to_string()),
                "rank" => rank = Some(value.parse().map_err(|_| Error::Parse(format!("bad rank `{value}`")))?),
                "shaded" => shaded = indices(value)?,
                "arrows" => arrows = pairs(value)?,
                _ => return Err(Error::Parse(format!("unknown key `{key}`"))),
            }
        }
    }
    let type_text = type_text.ok_or_else(|| Error::Parse("missing type=".into()))?;
    let label: TypeLabel = if type_text.chars().any(|c| c.is_ascii_digit()) {
        let label: TypeLabel = type_text.parse()?;
        if rank.is_some_and(|r| r != label.rank()) {
            return Err(Error::Parse(format!("rank={} disagrees with type={type_text}", rank.unwrap_or(0))));
        }
        label
    } else {
        let r = rank.ok_or_else(|| Error::Parse("type without rank needs rank=".into()))?;
        TypeLabel::simple(format!("{type_text}{r}").parse::<SimpleType>()?)
    };
    let name = name.unwrap_or_else(|| format!("diagram-{label}"));
    SatakeDiagram::new(&name, &label, &shaded, &arrows)
}

pub fn render_diagram(d: &SatakeDiagram) -> String {
    let shaded: Vec<String> = d.shaded.iter().map(ToString::to_string).collect();
    let arrows: Vec<String> = d.arrows().iter().map(|(a, b)| format!("{a}-{b}")).collect();
    format!(
        "type={}; shaded={}; arrows={}; name={};\n",
        d.model.label(),
        shaded.join(","),
        arrows.join(","),
        d.name
    )
}
