//! Text loaders for temporal edge streams, category sidecars and static edge lists.
//!
//! All formats are line oriented, fields separated by whitespace or commas, `#` starts a
//! comment.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use super::{GraphInstance, TemporalEdgeEvent, Vertex};
use crate::error::{Error, Result};

/// Column layout of a temporal edge file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StreamFormat {
    /// `t u v [w]`
    #[default]
    Generic,
    /// SocioPatterns contact lists: `t u v [category_u category_v]`.
    SocioPatterns,
    /// SNAP temporal edge lists: `u v t`.
    Snap,
}

impl std::str::FromStr for StreamFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "generic" => Ok(Self::Generic),
            "sociopatterns" => Ok(Self::SocioPatterns),
            "snap" => Ok(Self::Snap),
            other => Err(Error::InvalidParameter(format!("unknown stream format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParsedStream {
    pub events: Vec<TemporalEdgeEvent>,
    /// Categories carried inline by the format (SocioPatterns class columns).
    pub categories: BTreeMap<String, String>,
}

fn fields(line: &str) -> Vec<&str> {
    let body = line.split('#').next().unwrap_or("");
    body.split(|c: char| c.is_whitespace() || c == ',').filter(|f| !f.is_empty()).collect()
}

fn number(field: &str, what: &str, line: usize) -> Result<f64> {
    field.parse::<f64>().map_err(|_| Error::Parse { line, message: format!("invalid {what} `{field}`") })
}

pub fn read_stream<R: BufRead>(reader: R, format: StreamFormat) -> Result<ParsedStream> {
    let mut out = ParsedStream::default();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let f = fields(&line);
        if f.is_empty() {
            continue;
        }
        let bad_arity = |expected: &str| Error::Parse {
            line: line_no,
            message: format!("expected {expected}, found {} fields", f.len()),
        };
        let event = match format {
            StreamFormat::Generic => match f.len() {
                3 => TemporalEdgeEvent::new(number(f[0], "time", line_no)?, f[1], f[2]),
                4 => TemporalEdgeEvent::new(number(f[0], "time", line_no)?, f[1], f[2])
                    .weighted(number(f[3], "weight", line_no)?),
                _ => return Err(bad_arity("`t u v [w]`")),
            },
            StreamFormat::SocioPatterns => match f.len() {
                3 => TemporalEdgeEvent::new(number(f[0], "time", line_no)?, f[1], f[2]),
                5 => {
                    out.categories.insert(f[1].to_owned(), f[3].to_owned());
                    out.categories.insert(f[2].to_owned(), f[4].to_owned());
                    TemporalEdgeEvent::new(number(f[0], "time", line_no)?, f[1], f[2])
                }
                _ => return Err(bad_arity("`t u v [cu cv]`")),
            },
            StreamFormat::Snap => match f.len() {
                3 => TemporalEdgeEvent::new(number(f[2], "time", line_no)?, f[0], f[1]),
                _ => return Err(bad_arity("`u v t`")),
            },
        };
        out.events.push(event);
    }
    Ok(out)
}

/// Reads `vertex category` lines.
pub fn read_categories<R: BufRead>(reader: R) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let f = fields(&line);
        match f.len() {
            0 => {}
            2 => {
                out.insert(f[0].to_owned(), f[1].to_owned());
            }
            n => {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected `vertex category`, found {n} fields"),
                })
            }
        }
    }
    Ok(out)
}

/// Reads a static `u v [w]` edge list; vertex ids are sorted lexicographically.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<GraphInstance> {
    let mut raw = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let f = fields(&line);
        let w = match f.len() {
            0 => continue,
            2 => 1.0,
            3 => number(f[2], "weight", line_no)?,
            n => return Err(Error::Parse { line: line_no, message: format!("expected `u v [w]`, found {n} fields") }),
        };
        if f[0] == f[1] {
            return Err(Error::Parse { line: line_no, message: "self-loop".into() });
        }
        raw.push((f[0].to_owned(), f[1].to_owned(), w));
    }
    let ids: Vec<String> =
        raw.iter().flat_map(|(u, v, _)| [u.clone(), v.clone()]).collect::<BTreeSet<_>>().into_iter().collect();
    let index = |id: &str| ids.binary_search_by(|x| x.as_str().cmp(id)).expect("collected above");
    let edges: Vec<_> = raw.iter().map(|(u, v, w)| (index(u), index(v), *w)).collect();
    GraphInstance::new(ids.iter().map(Vertex::new).collect(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_lines() {
        let text = "# header\n0 a b\n1,a,c,2.5\n\n2 b c # trailing\n";
        let parsed = read_stream(text.as_bytes(), StreamFormat::Generic).unwrap();
        assert_eq!(parsed.events.len(), 3);
        assert_eq!(parsed.events[1], TemporalEdgeEvent::new(1.0, "a", "c").weighted(2.5));
    }

    #[test]
    fn preset_column_orders() {
        let sp = read_stream("20\t1\t2\tPC\tMP\n".as_bytes(), StreamFormat::SocioPatterns).unwrap();
        assert_eq!(sp.events[0], TemporalEdgeEvent::new(20.0, "1", "2"));
        assert_eq!(sp.categories["2"], "MP");
        let snap = read_stream("5 7 1200\n".as_bytes(), StreamFormat::Snap).unwrap();
        assert_eq!(snap.events[0], TemporalEdgeEvent::new(1200.0, "5", "7"));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = read_stream("0 a b\nx a b\n".as_bytes(), StreamFormat::Generic).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = read_stream("0 a\n".as_bytes(), StreamFormat::Generic).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn category_sidecar() {
        let cats = read_categories("a PC\n# c\nb MP*1\n".as_bytes()).unwrap();
        assert_eq!(cats.len(), 2);
        assert!(read_categories("a\n".as_bytes()).is_err());
    }

    #[test]
    fn edge_list() {
        let g = read_edge_list("b a 2\nb c\n".as_bytes()).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_index(0, 1).map(|i| g.edges()[i].weight), Some(2.0));
    }
}
