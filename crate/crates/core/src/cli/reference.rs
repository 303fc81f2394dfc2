use super::output::Verdict;
use crate::error::{Error, Result};

const TABLE: &str = include_str!("../../data/reference_values.csv");

/// A published number and the band accepted around it.
#[derive(Debug, Clone, PartialEq)]
pub struct Reference {
    pub name: String,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Reference {
    pub fn verdict(&self, value: f64) -> Verdict {
        Verdict { name: self.name.clone(), value, lower: self.lower, upper: self.upper }
    }

    pub fn contains(&self, value: f64) -> bool {
        value >= self.lower && value <= self.upper
    }
}

/// The bundled table of reference values.
pub fn references() -> Vec<Reference> {
    parse(TABLE).expect("bundled reference table is well formed")
}

pub fn reference(name: &str) -> Reference {
    references()
        .into_iter()
        .find(|r| r.name == name)
        .unwrap_or_else(|| panic!("no reference value named {name}"))
}

fn parse(text: &str) -> Result<Vec<Reference>> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| Error::Io(e.to_string()))?;
        let num = |i: usize| rec.get(i).and_then(|s| s.parse::<f64>().ok()).ok_or_else(|| Error::invalid("bad number"));
        out.push(Reference { name: rec[0].to_string(), value: num(1)?, lower: num(2)?, upper: num(3)? });
    }
    Ok(out)
}
