//! McKay's graph6 encoding.

use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }

    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ascii")
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::Graph6(format!(
            "byte {:#04x} at offset {pos} outside the printable range 63..126",
            bytes[pos]
        )));
    }
    let values: Vec<usize> = bytes.iter().map(|&b| (b - 63) as usize).collect();

    let (n, body) = match values.as_slice() {
        [] => return Err(Error::Graph6("empty input".into())),
        [63, 63, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated 8-byte vertex-count header".into()));
            }
            let n = rest[..6].iter().fold(0usize, |acc, &x| (acc << 6) | x);
            (n, &rest[6..])
        }
        [63, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated 4-byte vertex-count header".into()));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &x| (acc << 6) | x);
            (n, &rest[3..])
        }
        [n, rest @ ..] => (*n, rest),
    };

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() < need {
        return Err(Error::Graph6(format!(
            "truncated bit vector: expected {need} data bytes, found {}",
            body.len()
        )));
    }
    if body.len() > need {
        return Err(Error::Graph6(format!(
            "{} trailing bytes after the bit vector",
            body.len() - need
        )));
    }

    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let chunk = body[k / 6];
            if (chunk >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_a_underscore() {
        let p2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(emit_graph6(&p2), "A_");
    }

    #[test]
    fn zero_bits_parse_to_edgeless() {
        let g = parse_graph6("A?").unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 0));
    }

    #[test]
    fn known_encodings() {
        // K4 on six upper-triangle bits, all set.
        let k4 = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(emit_graph6(&k4), "C~");
        assert_eq!(parse_graph6("C~").unwrap(), k4);
        assert_eq!(emit_graph6(&Graph::empty(0)), "?");
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap().edge_count(), 1);
    }

    #[test]
    fn large_header_round_trip() {
        let n = 70;
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let g = Graph::from_edge_list(n, &edges).unwrap();
        let s = emit_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse_graph6(""), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("C"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("A_x"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("A "), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("~?"), Err(Error::Graph6(_))));
    }
}
