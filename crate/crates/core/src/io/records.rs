//! Configuration records: a line `n s`, then `s` lines of `n` integers.
//! Records are separated by a blank line and `#` starts a comment line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::forms::config::{is_normalized, VectorConfiguration};

/// Metadata line `# index=<d> s=<s> r=<r> aut=<order> or-rev=<0|1>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecordMeta {
    pub index: u64,
    pub s: usize,
    pub r: usize,
    pub aut: u64,
    pub or_rev: bool,
}

impl RecordMeta {
    pub fn compute(v: &VectorConfiguration) -> Result<Self> {
        let g = crate::equiv::automorphism_group(v)?;
        Ok(RecordMeta {
            index: v.lattice_index().ok_or(Error::NotWellRounded)?,
            s: v.len(),
            r: crate::forms::perfection_rank(v),
            aut: g.order,
            or_rev: !g.orientation_faithful(),
        })
    }

    pub fn to_line(&self) -> String {
        format!("# index={} s={} r={} aut={} or-rev={}", self.index, self.s, self.r, self.aut, u8::from(self.or_rev))
    }

    pub fn parse_line(line: &str) -> Option<Self> {
        let body = line.trim().strip_prefix('#')?.trim();
        let mut m = RecordMeta { index: 0, s: 0, r: 0, aut: 0, or_rev: false };
        let mut seen = 0;
        for kv in body.split_whitespace() {
            let (k, v) = kv.split_once('=')?;
            match k {
                "index" => m.index = v.parse().ok()?,
                "s" => m.s = v.parse().ok()?,
                "r" => m.r = v.parse().ok()?,
                "aut" => m.aut = v.parse().ok()?,
                "or-rev" => m.or_rev = v == "1",
                _ => return None,
            }
            seen += 1;
        }
        (seen == 5).then_some(m)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParsedRecords {
    pub configs: Vec<VectorConfiguration>,
    /// Metadata line directly preceding each record, if any.
    pub meta: Vec<Option<RecordMeta>>,
    pub warnings: Vec<String>,
}

fn parse_ints(line: &str, ln: usize) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse { line: ln, msg: format!("bad integer `{t}`") }))
        .collect()
}

pub fn parse_records(text: &str) -> Result<ParsedRecords> {
    let mut out = ParsedRecords::default();
    let mut pending_meta = None;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    while let Some((ln, line)) = lines.next() {
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(m) = RecordMeta::parse_line(line) {
                pending_meta = Some(m);
            }
            continue;
        }
        let head = parse_ints(line, ln)?;
        let [n, s] = head[..] else {
            return Err(Error::Parse { line: ln, msg: "expected header `n s`".into() });
        };
        if n < 1 || s < 0 {
            return Err(Error::Parse { line: ln, msg: format!("bad header `{line}`") });
        }
        let (n, s) = (n as usize, s as usize);
        let mut vectors = Vec::with_capacity(s);
        let mut canonical = true;
        while vectors.len() < s {
            let (vl, l) = lines
                .next()
                .ok_or_else(|| Error::IncompleteInput(format!("record at line {ln} has fewer than {s} vectors")))?;
            if l.is_empty() || l.starts_with('#') {
                return Err(Error::Parse { line: vl, msg: "record interrupted".into() });
            }
            let v = parse_ints(l, vl)?;
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.len() });
            }
            canonical &= is_normalized(&v);
            vectors.push(v);
        }
        let config = VectorConfiguration::new(n, vectors)?;
        if !canonical {
            out.warnings.push(format!("line {ln}: vectors negated to first nonzero coordinate positive"));
        }
        out.configs.push(config);
        out.meta.push(pending_meta.take());
    }
    for w in &out.warnings {
        log::warn!("{w}");
    }
    Ok(out)
}

pub fn write_record(s: &mut String, v: &VectorConfiguration, meta: Option<&RecordMeta>) {
    if let Some(m) = meta {
        s.push_str(&m.to_line());
        s.push('\n');
    }
    writeln!(s, "{} {}", v.dim(), v.len()).unwrap();
    for x in v.vectors() {
        let row: Vec<String> = x.iter().map(i64::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
}

/// Canonical text of a list of records, blank-line separated.
pub fn write_records(configs: &[VectorConfiguration], meta: Option<&[RecordMeta]>) -> String {
    let mut s = String::new();
    for (i, v) in configs.iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        write_record(&mut s, v, meta.map(|m| &m[i]));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_record() {
        let p = parse_records("2 2\n1 0\n0 1").unwrap();
        assert_eq!(p.configs, vec![VectorConfiguration::standard_basis(2)]);
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn negative_vector_is_normalized() {
        let p = parse_records("2 2\n-1 0\n0 1\n").unwrap();
        assert_eq!(p.configs[0].vectors()[1], vec![1, 0]);
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_records("2 2\n1 0\n0 x"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_records("2 2\n1 0\n0 1 1"), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(parse_records("2 2\n1 0\n-1 0"), Err(Error::DuplicateVector(_))));
        assert!(matches!(parse_records("2 3\n1 0\n0 1"), Err(Error::IncompleteInput(_))));
    }

    #[test]
    fn round_trip_with_meta() {
        let a = VectorConfiguration::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let b = VectorConfiguration::standard_basis(2);
        let meta = vec![RecordMeta::compute(&a).unwrap(), RecordMeta::compute(&b).unwrap()];
        let text = write_records(&[a.clone(), b.clone()], Some(&meta));
        let p = parse_records(&text).unwrap();
        assert_eq!(p.configs, vec![a, b]);
        assert_eq!(p.meta, vec![Some(meta[0]), Some(meta[1])]);
        assert_eq!(write_records(&p.configs, Some(&meta)), text);
        assert_eq!(meta[0], RecordMeta { index: 1, s: 3, r: 3, aut: 12, or_rev: true });
    }
}
