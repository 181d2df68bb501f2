//! Catalog CSV: `degree,c0,..,c{degree-1}[,1],disc,r1,r2,group[,disc_kind]`.
//!
//! Coefficients are low to high. Rows may carry the leading `1` or omit it.
//! Emission always writes the leading coefficient and adds `disc_kind` only
//! when some record carries a field discriminant.

use std::collections::HashSet;
use std::io::{Read, Write};

use num_bigint::BigInt;
use serde::Serialize;

use super::galois::GaloisEvidence;
use super::record::{poly_disc_i128, square_divisor_primes, GroupTag, NumberFieldRecord};
use crate::prime_poly::{is_perfect_square, signature, IntPolynomial};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowDiagnostic {
    /// 1-based line number in the input, header is line 1.
    pub row: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct LoadedCatalog {
    pub records: Vec<NumberFieldRecord>,
    pub diagnostics: Vec<RowDiagnostic>,
    pub duplicates: usize,
}

fn tag_for_label(label: &str, degree: usize) -> GroupTag {
    let sn = format!("S{degree}");
    if label.eq_ignore_ascii_case(&sn) {
        GroupTag::SnVerifiedInput
    } else if label.eq_ignore_ascii_case(&format!("{sn}-heuristic")) {
        GroupTag::SnHeuristic
    } else {
        GroupTag::Unknown
    }
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> std::result::Result<T, String> {
    s.trim()
        .parse::<T>()
        .map_err(|_| format!("bad {what} {:?}", s.trim()))
}

fn parse_row(fields: &[&str], has_kind: bool) -> std::result::Result<NumberFieldRecord, String> {
    let tail = if has_kind { 5 } else { 4 };
    if fields.len() < tail + 3 {
        return Err(format!(
            "expected at least {} fields, found {}",
            tail + 3,
            fields.len()
        ));
    }
    let degree: usize = parse_int(fields[0], "degree")?;
    if !(2..=5).contains(&degree) {
        return Err(format!("degree {degree} outside 2..=5"));
    }
    let coeff_fields = &fields[1..fields.len() - tail];
    let mut coeffs: Vec<i64> = coeff_fields
        .iter()
        .map(|s| parse_int::<i64>(s, "coefficient"))
        .collect::<std::result::Result<_, _>>()?;
    if coeffs.len() == degree {
        coeffs.push(1);
    } else if coeffs.len() != degree + 1 || coeffs[degree] != 1 {
        return Err(format!(
            "degree {degree} needs {degree} coefficients, or {} ending in 1; found {}",
            degree + 1,
            coeffs.len()
        ));
    }
    let poly = IntPolynomial::new(coeffs).map_err(|e| e.to_string())?;
    let rest = &fields[fields.len() - tail..];
    let disc: i128 = parse_int(rest[0], "disc")?;
    let r1: usize = parse_int(rest[1], "r1")?;
    let r2: usize = parse_int(rest[2], "r2")?;
    let label = rest[3].trim().to_string();
    let disc_is_field_disc = if has_kind {
        match rest[4].trim() {
            "field" => true,
            "poly" | "" => false,
            other => return Err(format!("disc_kind must be field or poly, got {other:?}")),
        }
    } else {
        false
    };
    if disc == 0 {
        return Err("zero discriminant".into());
    }
    if r1 + 2 * r2 != degree {
        return Err(format!(
            "signature ({r1},{r2}) inconsistent with degree {degree}"
        ));
    }
    let sig = signature(&poly).map_err(|e| e.to_string())?;
    if sig != (r1, r2) {
        return Err(format!(
            "signature ({r1},{r2}) but real root count gives {sig:?}"
        ));
    }
    let pdisc = poly_disc_i128(&poly).map_err(|e| e.to_string())?;
    if pdisc == 0 {
        return Err(format!("{poly} is not squarefree"));
    }
    let index_warning_primes = if disc_is_field_disc {
        if pdisc % disc != 0
            || pdisc.signum() != disc.signum()
            || !is_perfect_square(&BigInt::from(pdisc / disc))
        {
            return Err(format!(
                "field disc {disc} does not divide poly disc {pdisc} by a square"
            ));
        }
        let index = (pdisc / disc) as u128;
        crate::prime_poly::sieve::factorize(index)
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    } else {
        if pdisc != disc {
            return Err(format!(
                "disc {disc} differs from polynomial discriminant {pdisc}"
            ));
        }
        square_divisor_primes(disc)
    };
    Ok(NumberFieldRecord {
        group_tag: tag_for_label(&label, degree),
        group_label: label,
        poly,
        disc,
        disc_is_field_disc,
        signature: (r1, r2),
        index_warning_primes,
        galois_evidence: None::<GaloisEvidence>,
    })
}

/// Parse and validate a catalog. Malformed rows are reported and skipped;
/// repeated polynomials keep their first occurrence.
pub fn load_catalog<R: Read>(source: R) -> Result<LoadedCatalog> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(source);
    let mut out = LoadedCatalog::default();
    let mut header: Option<Vec<String>> = None;
    let mut seen = HashSet::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Csv(e.to_string()))?;
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        let fields: Vec<&str> = rec.iter().collect();
        if fields.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        let Some(h) = &header else {
            if !fields[0].trim().eq_ignore_ascii_case("degree") {
                return Err(Error::Csv(format!(
                    "line {line}: header must start with \"degree\""
                )));
            }
            header = Some(fields.iter().map(|s| s.trim().to_string()).collect());
            continue;
        };
        let has_kind = h.last().is_some_and(|c| c == "disc_kind");
        match parse_row(&fields, has_kind) {
            Ok(r) => {
                if seen.insert(r.poly.clone()) {
                    out.records.push(r);
                } else {
                    out.duplicates += 1;
                }
            }
            Err(message) => {
                log::warn!("catalog row {line}: {message}");
                out.diagnostics.push(RowDiagnostic { row: line, message });
            }
        }
    }
    Ok(out)
}

/// Write records in the canonical CSV layout. All records must share a degree.
pub fn write_catalog<W: Write>(records: &[NumberFieldRecord], sink: W) -> Result<()> {
    let degree = records.first().map(|r| r.degree()).unwrap_or(3);
    if let Some(r) = records.iter().find(|r| r.degree() != degree) {
        return Err(Error::MixedDegrees(degree, r.degree()));
    }
    let with_kind = records.iter().any(|r| r.disc_is_field_disc);
    let mut w = csv::WriterBuilder::new().flexible(false).from_writer(sink);
    let mut head = vec!["degree".to_string()];
    head.extend((0..=degree).map(|i| format!("c{i}")));
    head.extend(["disc", "r1", "r2", "group"].map(String::from));
    if with_kind {
        head.push("disc_kind".into());
    }
    w.write_record(&head)
        .map_err(|e| Error::Csv(e.to_string()))?;
    for r in records {
        let mut row = vec![degree.to_string()];
        row.extend(r.poly.coeffs().iter().map(|c| c.to_string()));
        row.push(r.disc.to_string());
        row.push(r.signature.0.to_string());
        row.push(r.signature.1.to_string());
        row.push(r.group_label.clone());
        if with_kind {
            row.push(
                if r.disc_is_field_disc {
                    "field"
                } else {
                    "poly"
                }
                .to_string(),
            );
        }
        w.write_record(&row)
            .map_err(|e| Error::Csv(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))?;
    Ok(())
}
