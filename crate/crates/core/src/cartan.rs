//! Cartan matrices in Bourbaki labelling, `c[i][j] = <alpha_i^vee, alpha_j>`, 0-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn parse(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

fn link(c: &mut [Vec<i64>], i: usize, j: usize) {
    c[i][j] = -1;
    c[j][i] = -1;
}

pub fn cartan(family: Family, n: usize) -> Result<Vec<Vec<i64>>> {
    let ok = match family {
        Family::A => n >= 1,
        Family::B | Family::C => n >= 2,
        Family::D => n >= 3,
        Family::E => (6..=8).contains(&n),
        Family::F => n == 4,
        Family::G => n == 2,
    };
    if !ok {
        return Err(Error::InvalidDatum(format!("no type {}{}", family.letter(), n)));
    }
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    match family {
        Family::A => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            c[n - 1][n - 2] = -2;
        }
        Family::C => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            c[n - 2][n - 1] = -2;
        }
        Family::D => {
            for i in 0..n - 2 {
                link(&mut c, i, i + 1);
            }
            link(&mut c, n - 3, n - 1);
        }
        Family::E => {
            link(&mut c, 0, 2);
            link(&mut c, 1, 3);
            for i in 2..n - 1 {
                link(&mut c, i, i + 1);
            }
        }
        Family::F => {
            link(&mut c, 0, 1);
            link(&mut c, 1, 2);
            link(&mut c, 2, 3);
            c[2][1] = -2;
        }
        Family::G => {
            c[0][1] = -3;
            c[1][0] = -1;
        }
    }
    Ok(c)
}

/// Parses a type label such as `"E6"` or `"c3"`.
pub fn parse_label(s: &str) -> Result<(Family, usize)> {
    let s = s.trim();
    let mut ch = s.chars();
    let f = ch
        .next()
        .and_then(Family::parse)
        .ok_or_else(|| Error::InvalidDatum(format!("bad type label {s:?}")))?;
    let n: usize = ch
        .as_str()
        .parse()
        .map_err(|_| Error::InvalidDatum(format!("bad type label {s:?}")))?;
    Ok((f, n))
}
