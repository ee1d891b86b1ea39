use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use bjson_core::{build_plan, decode, encode, json_equal, minify};
use flate2::write::GzEncoder;
use flate2::Compression;
use rayon::prelude::*;

use crate::stats::{reduction, Percent};
use crate::{BenchError, Case};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryMode {
    SchemaDriven,
    SchemaLess,
}

impl fmt::Display for BinaryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinaryMode::SchemaDriven => "schema-driven",
            BinaryMode::SchemaLess => "schema-less",
        })
    }
}

/// Measurements for one case. Only built after both modes round-trip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub name: String,
    pub taxonomy: String,
    pub json_size: u64,
    pub gzip_size: u64,
    pub schema_driven_size: u64,
    pub schema_less_size: u64,
    pub driven_payload: Vec<u8>,
    pub less_payload: Vec<u8>,
    pub references: BTreeMap<String, u64>,
}

impl CaseReport {
    pub fn driven_vs_json(&self) -> Percent {
        reduction(self.schema_driven_size, self.json_size)
    }

    pub fn less_vs_json(&self) -> Percent {
        reduction(self.schema_less_size, self.json_size)
    }

    pub fn driven_vs_gzip(&self) -> Percent {
        reduction(self.schema_driven_size, self.gzip_size)
    }

    pub fn less_vs_gzip(&self) -> Percent {
        reduction(self.schema_less_size, self.gzip_size)
    }
}

/// Gzip at maximum compression, header and trailer included.
pub fn gzip_best(bytes: &[u8]) -> Vec<u8> {
    let mut enc = GzEncoder::new(Vec::new(), Compression::best());
    enc.write_all(bytes).expect("writing to a Vec cannot fail");
    enc.finish().expect("writing to a Vec cannot fail")
}

pub fn run_case(case: &Case) -> Result<CaseReport, BenchError> {
    let text = minify(&case.document);
    let driven_payload = round_trip(case, BinaryMode::SchemaDriven)?;
    let less_payload = round_trip(case, BinaryMode::SchemaLess)?;
    Ok(CaseReport {
        name: case.name.clone(),
        taxonomy: case.taxonomy.clone(),
        json_size: text.len() as u64,
        gzip_size: gzip_best(text.as_bytes()).len() as u64,
        schema_driven_size: driven_payload.len() as u64,
        schema_less_size: less_payload.len() as u64,
        driven_payload,
        less_payload,
        references: case.references.clone(),
    })
}

fn round_trip(case: &Case, mode: BinaryMode) -> Result<Vec<u8>, BenchError> {
    let schema = match mode {
        BinaryMode::SchemaDriven => &case.strict,
        BinaryMode::SchemaLess => &case.loose,
    };
    let plan = build_plan(schema);
    let payload = encode(&case.document, &plan).map_err(|source| BenchError::Encode {
        case: case.name.clone(),
        mode,
        source,
    })?;
    let back = decode(&payload, &plan).map_err(|source| BenchError::Decode {
        case: case.name.clone(),
        mode,
        source,
    })?;
    if !json_equal(&back, &case.document) {
        return Err(BenchError::NotLossless {
            case: case.name.clone(),
            mode,
        });
    }
    Ok(payload)
}

/// Measures all cases in parallel; reports come back sorted by name.
pub fn run_corpus(cases: &[Case]) -> Result<Vec<CaseReport>, BenchError> {
    let mut reports = cases.par_iter().map(run_case).collect::<Result<Vec<_>, _>>()?;
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(reports)
}
