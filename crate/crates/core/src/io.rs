//! Text formats for point sets, query boxes and query reports.
//!
//! Input lines hold numbers separated by commas and/or whitespace. Blank
//! lines and lines starting with `#` are skipped; LF and CRLF endings are
//! both accepted. Output always uses commas and LF, and renders numbers in
//! the shortest form that parses back to the same `f64`.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::point::{Point, PointSet, QueryBox};

/// Numeric data lines of `text` as `(line number, fields)`, each checked to
/// hold exactly `arity` finite numbers.
fn data_lines(text: &str, arity: usize) -> impl Iterator<Item = Result<Vec<f64>>> + '_ {
    text.lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
        .map(move |(line, text)| {
            let fields: Vec<&str> = text
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|f| !f.is_empty())
                .collect();
            if fields.len() != arity {
                return Err(Error::Parse {
                    line,
                    reason: format!("expected {arity} fields, found {}", fields.len()),
                });
            }
            fields
                .iter()
                .map(|f| match f.parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(v),
                    Ok(_) => Err(Error::Parse {
                        line,
                        reason: format!("non-finite value `{f}`"),
                    }),
                    Err(_) => Err(Error::Parse {
                        line,
                        reason: format!("not a number: `{f}`"),
                    }),
                })
                .collect()
        })
}

/// Parses a point file with `dims` coordinates per line. Ids follow file
/// order.
pub fn parse_points(text: &str, dims: usize) -> Result<PointSet> {
    if dims == 0 {
        return Err(Error::ZeroDimension);
    }
    let rows = data_lines(text, dims).collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    PointSet::new(dims, rows)
}

/// Parses a query file: `lo_1 .. lo_d hi_1 .. hi_d` per line.
pub fn parse_queries(text: &str, dims: usize) -> Result<Vec<QueryBox>> {
    if dims == 0 {
        return Err(Error::ZeroDimension);
    }
    let boxes = data_lines(text, 2 * dims)
        .map(|row| {
            let mut lo = row?;
            let hi = lo.split_off(dims);
            QueryBox::new(lo, hi)
        })
        .collect::<Result<Vec<_>>>()?;
    if boxes.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(boxes)
}

fn push_coords(out: &mut String, coords: &[f64]) {
    for (j, c) in coords.iter().enumerate() {
        if j > 0 {
            out.push(',');
        }
        write!(out, "{c}").unwrap();
    }
}

/// Renders a point set, one point per line, in id order.
pub fn write_points(points: &PointSet) -> String {
    let mut out = String::new();
    for p in points.points() {
        push_coords(&mut out, &p.coords);
        out.push('\n');
    }
    out
}

/// Renders query boxes in the query file layout.
pub fn write_queries(boxes: &[QueryBox]) -> String {
    let mut out = String::new();
    for b in boxes {
        push_coords(&mut out, b.lo());
        out.push(',');
        push_coords(&mut out, b.hi());
        out.push('\n');
    }
    out
}

/// Answer to one query, as reported.
#[derive(Debug, Clone, PartialEq)]
pub enum QueryResult<'a> {
    /// Matching points, sorted by id.
    Points(Vec<&'a Point>),
    Count(usize),
}

impl QueryResult<'_> {
    pub fn len(&self) -> usize {
        match self {
            QueryResult::Points(p) => p.len(),
            QueryResult::Count(k) => *k,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Renders one `q=<index> k=<count>` header per query, each followed by its
/// points as `<id>: c_1,...,c_d` when the result carries them.
pub fn write_report(results: &[QueryResult<'_>]) -> String {
    let mut out = String::new();
    for (q, result) in results.iter().enumerate() {
        writeln!(out, "q={q} k={}", result.len()).unwrap();
        if let QueryResult::Points(points) = result {
            for p in points {
                write!(out, "{}: ", p.id).unwrap();
                push_coords(&mut out, &p.coords);
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_basic() {
        let set = parse_points("1,2\n3,4\n", 2).unwrap();
        assert_eq!(set.points()[0], Point::new(vec![1.0, 2.0], 0));
        assert_eq!(set.points()[1], Point::new(vec![3.0, 4.0], 1));
    }

    #[test]
    fn points_comments_and_whitespace() {
        let set = parse_points("# x y\n1 2\n", 2).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.points()[0].coords, vec![1.0, 2.0]);
        let set = parse_points("\r\n 1,\t2 \r\n\n# trailing\n-3e2 , 0.5\r\n", 2).unwrap();
        assert_eq!(set.points()[1].coords, vec![-300.0, 0.5]);
    }

    #[test]
    fn points_errors() {
        let err = parse_points("1,2,3\n", 2).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_points("1,2\n\n1,x\n", 2).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        for bad in ["NaN,1", "inf,1", "1,-infinity"] {
            assert!(matches!(
                parse_points(bad, 2).unwrap_err(),
                Error::Parse { line: 1, .. }
            ));
        }
        assert_eq!(parse_points("# only\n\n", 2).unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn queries() {
        let boxes = parse_queries("0,0,1,1\n", 2).unwrap();
        assert_eq!(boxes[0].lo(), &[0.0, 0.0]);
        assert_eq!(boxes[0].hi(), &[1.0, 1.0]);
        let boxes = parse_queries("5,0,1,9\n", 2).unwrap();
        assert!(boxes[0].is_empty());
        assert!(matches!(
            parse_queries("0,1\n", 2).unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn report_format() {
        assert_eq!(write_report(&[QueryResult::Points(vec![])]), "q=0 k=0\n");
        let a = Point::new(vec![1.0, 2.0], 3);
        let b = Point::new(vec![0.5, -0.0], 7);
        assert_eq!(
            write_report(&[QueryResult::Points(vec![&a])]),
            "q=0 k=1\n3: 1,2\n"
        );
        assert_eq!(
            write_report(&[QueryResult::Points(vec![&a, &b]), QueryResult::Count(4)]),
            "q=0 k=2\n3: 1,2\n7: 0.5,-0\nq=1 k=4\n"
        );
    }

    #[test]
    fn queries_round_trip() {
        let boxes = vec![
            QueryBox::new(vec![0.1, 3.0], vec![1e-300, -2.5]).unwrap(),
            QueryBox::new(vec![7.0, 8.0], vec![9.0, 10.0]).unwrap(),
        ];
        assert_eq!(parse_queries(&write_queries(&boxes), 2).unwrap(), boxes);
    }
}
