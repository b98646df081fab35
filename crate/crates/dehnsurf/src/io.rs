//! Text gluing-table formats, one complex per file.
//!
//! ```text
//! # comment
//! cubulation k=2
//! 0 0 -> 1 0 : 0 1 2 3
//! ...
//! triangulation n=2
//! 0 0 -> 1 : 0 1 2 3
//! ```
//!
//! Each glued pair appears once; the involution partner is implied. For
//! triangulations the target face is the image of the source face under the
//! permutation, so only the target tetrahedron is written.

use crate::cubulation::IdealCubulation;
use crate::perm::Perm4;
use crate::triangulation::IdealTriangulation;

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing header line (`cubulation k=<n>` or `triangulation n=<n>`)")]
    MissingHeader,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        message: message.into(),
    }
}

pub enum Complex {
    Triangulation(IdealTriangulation),
    Cubulation(IdealCubulation),
}

pub fn cubulation_to_string(c: &IdealCubulation) -> String {
    let mut out = format!("cubulation k={}\n", c.k());
    for (cube, face, g) in c.pairs() {
        out.push_str(&format!(
            "{} {} -> {} {} : {} {} {} {}\n",
            cube, face, g.cube, g.face, g.corner_map.0[0], g.corner_map.0[1], g.corner_map.0[2], g.corner_map.0[3]
        ));
    }
    out
}

pub fn triangulation_to_string(t: &IdealTriangulation) -> String {
    let mut out = format!("triangulation n={}\n", t.n());
    for (tet, face, g) in t.pairs() {
        out.push_str(&format!(
            "{} {} -> {} : {} {} {} {}\n",
            tet, face, g.tet, g.perm.0[0], g.perm.0[1], g.perm.0[2], g.perm.0[3]
        ));
    }
    out
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

fn content_lines(input: &str) -> impl Iterator<Item = Line<'_>> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            None
        } else {
            Some(Line { no: i + 1, text })
        }
    })
}

fn parse_header(text: &str, line: usize) -> Result<(bool, usize), ParseError> {
    let mut parts = text.split_whitespace();
    let kind = parts.next().ok_or(ParseError::MissingHeader)?;
    let (is_cub, key) = match kind {
        "cubulation" => (true, "k"),
        "triangulation" => (false, "n"),
        other => return Err(err(line, format!("unknown header `{other}`"))),
    };
    let sizing = parts
        .next()
        .ok_or_else(|| err(line, format!("expected `{key}=<int>`")))?;
    let count = sizing
        .strip_prefix(key)
        .and_then(|s| s.strip_prefix('='))
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| err(line, format!("expected `{key}=<int>`, found `{sizing}`")))?;
    Ok((is_cub, count))
}

fn parse_ints(text: &str, line: usize) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| err(line, format!("expected integer, found `{tok}`")))
        })
        .collect()
}

fn perm_from(values: &[usize], line: usize) -> Result<Perm4, ParseError> {
    if values.len() != 4 {
        return Err(err(line, "expected 4 permutation images"));
    }
    let imgs = [values[0] as u8, values[1] as u8, values[2] as u8, values[3] as u8];
    Perm4::new(imgs).ok_or_else(|| err(line, "not a permutation of 0..3"))
}

pub fn parse_complex(input: &str) -> Result<Complex, ParseError> {
    let mut lines = content_lines(input);
    let header = lines.next().ok_or(ParseError::MissingHeader)?;
    let (is_cub, count) = parse_header(header.text, header.no)?;
    if is_cub {
        let mut c = IdealCubulation::new(count);
        for l in lines {
            let (lhs, rhs) = l
                .text
                .split_once("->")
                .ok_or_else(|| err(l.no, "expected `c f -> c' f' : p0 p1 p2 p3`"))?;
            let (mid, perm_part) = rhs
                .split_once(':')
                .ok_or_else(|| err(l.no, "expected `: p0 p1 p2 p3` after target"))?;
            let src = parse_ints(lhs, l.no)?;
            let dst = parse_ints(mid, l.no)?;
            let perm = perm_from(&parse_ints(perm_part, l.no)?, l.no)?;
            if src.len() != 2 || dst.len() != 2 {
                return Err(err(l.no, "expected `c f -> c' f'`"));
            }
            let (cube, face, to_cube, to_face) = (src[0], src[1], dst[0], dst[1]);
            if cube >= count || to_cube >= count || face > 5 || to_face > 5 {
                return Err(err(l.no, "cube or face index out of range"));
            }
            if c.gluing(cube, face as u8).is_some() || c.gluing(to_cube, to_face as u8).is_some() {
                return Err(err(l.no, "face glued more than once"));
            }
            if (cube, face) == (to_cube, to_face) {
                return Err(err(l.no, "face glued to itself"));
            }
            c.glue_pair(cube, face as u8, to_cube, to_face as u8, perm);
        }
        Ok(Complex::Cubulation(c))
    } else {
        let mut t = IdealTriangulation::new(count);
        for l in lines {
            let (lhs, rhs) = l
                .text
                .split_once("->")
                .ok_or_else(|| err(l.no, "expected `t f -> t' : q0 q1 q2 q3`"))?;
            let (mid, perm_part) = rhs
                .split_once(':')
                .ok_or_else(|| err(l.no, "expected `: q0 q1 q2 q3` after target"))?;
            let src = parse_ints(lhs, l.no)?;
            let dst = parse_ints(mid, l.no)?;
            let perm = perm_from(&parse_ints(perm_part, l.no)?, l.no)?;
            if src.len() != 2 || dst.len() != 1 {
                return Err(err(l.no, "expected `t f -> t'`"));
            }
            let (tet, face, to_tet) = (src[0], src[1], dst[0]);
            if tet >= count || to_tet >= count || face > 3 {
                return Err(err(l.no, "tetrahedron or face index out of range"));
            }
            let to_face = perm.apply(face as u8);
            if t.gluing(tet, face as u8).is_some() || t.gluing(to_tet, to_face).is_some() {
                return Err(err(l.no, "face glued more than once"));
            }
            if (tet, face as u8) == (to_tet, to_face) {
                return Err(err(l.no, "face glued to itself"));
            }
            t.glue_pair(tet, face as u8, to_tet, to_face, perm);
        }
        Ok(Complex::Triangulation(t))
    }
}

pub fn parse_cubulation(input: &str) -> Result<IdealCubulation, ParseError> {
    match parse_complex(input)? {
        Complex::Cubulation(c) => Ok(c),
        Complex::Triangulation(_) => Err(err(1, "expected a cubulation, found a triangulation")),
    }
}

pub fn parse_triangulation(input: &str) -> Result<IdealTriangulation, ParseError> {
    match parse_complex(input)? {
        Complex::Triangulation(t) => Ok(t),
        Complex::Cubulation(_) => Err(err(1, "expected a triangulation, found a cubulation")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn cubulation_round_trip() {
        let c = fixtures::coordinate_plane_s3();
        let s = cubulation_to_string(&c);
        let parsed = parse_cubulation(&s).unwrap();
        assert_eq!(parsed, c);
    }

    #[test]
    fn triangulation_round_trip() {
        let t = fixtures::double_tet();
        let s = triangulation_to_string(&t);
        let parsed = parse_triangulation(&s).unwrap();
        assert_eq!(parsed, t);
    }

    #[test]
    fn comments_and_errors() {
        let good = "# a fixture\ncubulation k=2\n0 0 -> 1 0 : 0 1 2 3 # pair\n";
        assert!(parse_cubulation(good).is_ok());
        let bad = "cubulation k=2\n0 0 -> 1 0 : 0 1 2\n";
        let e = parse_cubulation(bad).unwrap_err();
        assert!(e.to_string().contains("line 2"));
        let dup = "cubulation k=2\n0 0 -> 1 0 : 0 1 2 3\n0 0 -> 1 1 : 0 1 2 3\n";
        assert!(parse_cubulation(dup).is_err());
    }

    #[test]
    fn signature_parses_back_isomorphic() {
        let c = fixtures::two_cube_t3();
        let sig = crate::signature::cubulation_signature(&c);
        let parsed = parse_cubulation(&sig).unwrap();
        assert!(parsed.validate().is_ok());
        assert_eq!(crate::signature::cubulation_signature(&parsed), sig);
    }
}
