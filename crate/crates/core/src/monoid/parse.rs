//! Text format for presentations.
//!
//! ```text
//! generators:
//!   P1 2 2,0        # name, grade, optional dimension vector
//!   M  3 2,1
//! carrier: all      # or: dimvec-submonoid: (1,1) (2,0)
//! atom-bound: 4     # optional
//! relations:
//!   M + P2 = P1 + I1
//!   2*M = P1 + I1
//! ```

use super::{Carrier, GeneratorTable, Presentation, Word};
use crate::error::{Error, Result};

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::InvalidSpec(format!("line {}: {}", line + 1, msg.into()))
}

fn parse_vector(s: &str) -> Option<Vec<i64>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    s.split(',').map(|t| t.trim().parse().ok()).collect()
}

fn parse_word(gens: &GeneratorTable, s: &str, line: usize) -> Result<Word> {
    let mut w = vec![0; gens.len()];
    let s = s.trim();
    if s == "0" {
        return Ok(w);
    }
    for term in s.split('+') {
        let term = term.trim();
        let (coef, name) = match term.split_once('*') {
            Some((c, n)) => (c.trim().parse::<usize>().map_err(|_| bad(line, format!("bad coefficient in {term:?}")))?, n.trim()),
            None => (1, term),
        };
        let k = gens.names.iter().position(|g| g == name).ok_or_else(|| bad(line, format!("unknown generator {name:?}")))?;
        w[k] += coef;
    }
    Ok(w)
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Generators,
        Relations,
    }
    let mut section = Section::None;
    let mut names = Vec::new();
    let mut grades = Vec::new();
    let mut dimvecs: Vec<Option<Vec<i64>>> = Vec::new();
    let mut carrier = Carrier::All;
    let mut atom_bound = None;
    let mut rel_lines: Vec<(usize, String)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some((key, rest)) = line.split_once(':') {
            let key = key.trim();
            let rest = rest.trim();
            match key {
                "generators" => {
                    section = Section::Generators;
                    continue;
                }
                "relations" => {
                    section = Section::Relations;
                    continue;
                }
                "carrier" => {
                    section = Section::None;
                    if rest == "all" {
                        carrier = Carrier::All;
                    } else if let Some(vs) = rest.strip_prefix("dimvec-submonoid:") {
                        let vecs: Option<Vec<Vec<i64>>> = vs
                            .split(')')
                            .map(|t| t.trim().trim_start_matches(';').trim())
                            .filter(|t| !t.is_empty())
                            .map(parse_vector)
                            .collect();
                        carrier = Carrier::dimvec(vecs.ok_or_else(|| bad(ln, "bad generating vector"))?);
                    } else {
                        return Err(bad(ln, format!("unknown carrier {rest:?}")));
                    }
                    continue;
                }
                "atom-bound" => {
                    section = Section::None;
                    atom_bound = Some(rest.parse::<usize>().map_err(|_| bad(ln, "bad atom bound"))?);
                    continue;
                }
                _ => {}
            }
        }
        match section {
            Section::Generators => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() < 2 || toks.len() > 3 {
                    return Err(bad(ln, "expected: name grade [dimvec]"));
                }
                names.push(toks[0].to_string());
                grades.push(toks[1].parse::<usize>().map_err(|_| bad(ln, "bad grade"))?);
                dimvecs.push(match toks.get(2) {
                    Some(t) => Some(parse_vector(t).ok_or_else(|| bad(ln, "bad dimension vector"))?),
                    None => None,
                });
            }
            Section::Relations => rel_lines.push((ln, line.to_string())),
            Section::None => return Err(bad(ln, format!("unexpected line {line:?}"))),
        }
    }
    let dims = if dimvecs.iter().all(|d| d.is_some()) && !dimvecs.is_empty() {
        Some(dimvecs.into_iter().map(|d| d.unwrap()).collect())
    } else if dimvecs.iter().all(|d| d.is_none()) {
        None
    } else {
        return Err(Error::InvalidSpec("either every generator has a dimension vector or none does".into()));
    };
    let gens = GeneratorTable::new(names, grades, dims)?;
    let mut relations = Vec::new();
    for (ln, line) in rel_lines {
        let (l, r) = line.split_once('=').ok_or_else(|| bad(ln, "relation needs '='"))?;
        relations.push((parse_word(&gens, l, ln)?, parse_word(&gens, r, ln)?));
    }
    let mut p = Presentation::new(gens, carrier, relations)?;
    p.atom_grade_bound = atom_bound;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOOP: &str = "
generators:
  P1 2 2,0
  P2 3 2,1
  I1 4 2,2
  M  3 2,1
carrier: all
relations:
  M + P2 = P1 + I1
  P1 + I1 = 2*M
  2*P2 = P1 + I1   # third sequence
";

    #[test]
    fn parses_the_loop_presentation() {
        let p = parse_presentation(LOOP).unwrap();
        assert_eq!(p.gens.names, vec!["P1", "P2", "I1", "M"]);
        assert_eq!(p.relations[1], (vec![1, 0, 1, 0], vec![0, 0, 0, 2]));
        assert!(p.carrier.is_all());
    }

    #[test]
    fn parses_a_dimvec_carrier() {
        let text = "generators:\n S1 1 1,0\n S2 1 0,1\n P 2 1,1\ncarrier: dimvec-submonoid: (2,1)\natom-bound: 3\nrelations:\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.carrier, Carrier::dimvec(vec![vec![2, 1]]));
        assert_eq!(p.atom_bound(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_presentation("generators:\n x 1\nrelations:\n x = y\n").is_err());
        assert!(parse_presentation("generators:\n x 1\n y 2\nrelations:\n x = y\n").is_err());
        assert!(parse_presentation("nonsense\n").is_err());
        assert!(parse_presentation("generators:\n x 0\n").is_err());
    }
}
