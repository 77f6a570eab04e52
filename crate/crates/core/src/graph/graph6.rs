//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix in column order (x01, x02, x12, x03, ...), six bits per
//! printable byte, each offset by 63.

use super::Graph;
use crate::error::{Error, Result};

const SHORT_MAX: usize = 62;
const LONG_MAX: usize = 258_047;

pub(super) fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= SHORT_MAX {
        out.push(n as u8 + 63);
    } else {
        assert!(n <= LONG_MAX, "graph6 size header");
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub(super) fn decode(text: &str) -> Result<Graph> {
    let bytes = text.trim().as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b} outside the printable range 63..=126")));
    }
    let (n, payload) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, ..] => return Err(Error::Graph6("graphs above 258047 vertices are not supported".into())),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated size header".into()));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if payload.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} payload bytes for n = {n}, found {}",
            payload.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.set_edge(i, j);
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
    fn decodes_small_examples() {
        let g = decode("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);

        let k2 = decode("A_").unwrap();
        assert_eq!(k2, Graph::complete(2).unwrap());
        assert_eq!(decode("?").unwrap().n(), 0);
        assert_eq!(encode(&Graph::complete(4).unwrap()), "C~");
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(decode(""), Err(Error::Graph6(_))));
        assert!(matches!(decode("D?"), Err(Error::Graph6(_))));
        assert!(matches!(decode("D?{?"), Err(Error::Graph6(_))));
        assert!(matches!(decode("A "), Err(Error::Graph6(_))));
        assert!(matches!(decode("A\u{7f}"), Err(Error::Graph6(_))));
        assert!(matches!(decode("~?"), Err(Error::Graph6(_))));
    }

    #[test]
    fn round_trips_every_graph_on_five_vertices() {
        let pairs: Vec<(usize, usize)> = (1..5).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        for mask in 0u32..1 << pairs.len() {
            let g = Graph::from_edges(
                5,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &e)| e),
            )
            .unwrap();
            let s = encode(&g);
            let back = decode(&s).unwrap();
            assert_eq!(back, g);
            assert_eq!(encode(&back), s);
        }
    }

    #[test]
    fn long_form_round_trip() {
        let g = Graph::from_edges(100, [(0, 99), (5, 63), (62, 63)]).unwrap();
        let s = encode(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode(&s).unwrap(), g);
    }
}
