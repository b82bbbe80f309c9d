//! The transformation file format: one map per line as `n` space-separated
//! 1-based images, all lines the same length, `#` lines are comments.

use crate::error::{Error, Result};
use crate::transform::Endofunction;

pub fn parse_maps(text: &str) -> Result<Vec<Endofunction>> {
    let mut maps = Vec::new();
    let mut degree: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let images = body
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    message: format!("`{tok}` is not a positive integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        match degree {
            None => degree = Some(images.len()),
            Some(n) if n != images.len() => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {n} images, found {}", images.len()),
                })
            }
            _ => {}
        }
        let f = Endofunction::from_one_based(&images).map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        maps.push(f);
    }
    Ok(maps)
}

/// Writes maps sorted lexicographically, one per line.
pub fn format_maps(maps: &[Endofunction]) -> String {
    let mut sorted: Vec<&Endofunction> = maps.iter().collect();
    sorted.sort();
    let mut out = String::new();
    for f in sorted {
        let line: Vec<String> = f.to_one_based().iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments() {
        let maps = parse_maps("# cerny\n2 3 4 1\n\n2 2 3 4\n").unwrap();
        assert_eq!(maps.len(), 2);
        assert_eq!(maps[1].to_one_based(), vec![2, 2, 3, 4]);
        assert_eq!(format_maps(&maps), "2 2 3 4\n2 3 4 1\n");
    }

    #[test]
    fn errors_are_line_numbered() {
        assert!(matches!(
            parse_maps("1 2\n1 2 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_maps("# x\n1 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_maps("1 a\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_maps("0 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert_eq!(parse_maps("# empty\n").unwrap(), vec![]);
    }

    proptest! {
        #[test]
        fn format_then_parse_round_trips(n in 1usize..8, raw in prop::collection::vec(prop::collection::vec(0u32..8, 8), 1..6)) {
            let maps: Vec<Endofunction> = raw
                .into_iter()
                .map(|v| Endofunction::from_images(v.into_iter().take(n).map(|x| x % n as u32).collect()).unwrap())
                .collect();
            let text = format_maps(&maps);
            let back = parse_maps(&text).unwrap();
            prop_assert_eq!(format_maps(&back), text);
            let mut sorted = maps.clone();
            sorted.sort();
            prop_assert_eq!(back, sorted);
        }
    }
}
