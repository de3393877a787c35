use thiserror::Error;

use super::{Dihedral, Element, Family, GroupId, Perm, SignedPerm};

/// Malformed element text; `position` is a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn at(&self, s: &[u8]) -> bool {
        self.text[self.pos..].starts_with(s)
    }

    fn skip_separators(&mut self) {
        while self
            .peek()
            .is_some_and(|b| b.is_ascii_whitespace() || b == b',')
        {
            self.pos += 1;
        }
    }

    fn signed_int(&mut self) -> Result<(i64, usize), ParseError> {
        let start = self.pos;
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let digits_start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return self.error(start, "expected an integer");
        }
        let digits = std::str::from_utf8(&self.text[digits_start..self.pos]).expect("ascii digits");
        let value: i64 = match digits.parse() {
            Ok(v) => v,
            Err(_) => return self.error(start, "integer out of range"),
        };
        Ok((if negative { -value } else { value }, start))
    }

    /// Reads points up to `close`, which is consumed.
    fn points_until(&mut self, close: &[u8]) -> Result<Vec<(i64, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_separators();
            if self.at(close) {
                self.pos += close.len();
                return Ok(out);
            }
            if self.peek().is_none() {
                return self.error(
                    self.pos,
                    format!(
                        "unterminated cycle, expected {:?}",
                        String::from_utf8_lossy(close)
                    ),
                );
            }
            out.push(self.signed_int()?);
        }
    }
}

pub(super) fn parse_element(text: &str, g: GroupId) -> Result<Element, ParseError> {
    let mut cur = Cursor {
        text: text.as_bytes(),
        pos: 0,
    };
    let mut acc = g.identity();
    let mut factors = 0;
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
        let factor = match g.family() {
            Family::A => factor_a(&mut cur, g.parameter() as usize + 1)?,
            Family::B => factor_b(&mut cur, g.parameter() as usize)?,
            Family::I2 => factor_i2(&mut cur, g.parameter())?,
        };
        acc = acc
            .compose(&factor)
            .expect("factor parsed in the same group");
        factors += 1;
    }
    if factors == 0 {
        return cur.error(0, "empty element text");
    }
    Ok(acc)
}

fn check_distinct(cur: &Cursor, points: &[(i64, usize)]) -> Result<(), ParseError> {
    for (k, &(x, pos)) in points.iter().enumerate() {
        if points[..k]
            .iter()
            .any(|&(y, _)| y.unsigned_abs() == x.unsigned_abs())
        {
            return cur.error(pos, format!("repeated symbol {x} in cycle"));
        }
    }
    Ok(())
}

fn factor_a(cur: &mut Cursor, degree: usize) -> Result<Element, ParseError> {
    let start = cur.pos;
    match cur.peek() {
        Some(b'e') => {
            cur.pos += 1;
            Ok(Element::A(Perm::identity(degree)))
        }
        Some(b'(') => {
            cur.pos += 1;
            let points = cur.points_until(b")")?;
            if points.is_empty() {
                return cur.error(start, "empty cycle");
            }
            for &(x, pos) in &points {
                if x < 1 || x as usize > degree {
                    return cur.error(pos, format!("{x} outside 1..={degree}"));
                }
            }
            check_distinct(cur, &points)?;
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for (k, &(x, _)) in points.iter().enumerate() {
                let next = points[(k + 1) % points.len()].0;
                images[x as usize - 1] = next as u32 - 1;
            }
            Ok(Element::A(Perm::from_zero_based(images)))
        }
        _ => cur.error(start, "expected 'e' or '('"),
    }
}

fn factor_b(cur: &mut Cursor, n: usize) -> Result<Element, ParseError> {
    let start = cur.pos;
    let (points, balanced) = if cur.at(b"e") {
        cur.pos += 1;
        return Ok(Element::B(SignedPerm::identity(n)));
    } else if cur.at(b"((") {
        cur.pos += 2;
        (cur.points_until(b"))")?, false)
    } else if cur.at(b"[") {
        cur.pos += 1;
        (cur.points_until(b"]")?, true)
    } else {
        return cur.error(start, "expected 'e', '((' or '['");
    };
    if points.is_empty() {
        return cur.error(start, "empty cycle");
    }
    for &(x, pos) in &points {
        if x == 0 || x.unsigned_abs() as usize > n {
            return cur.error(pos, format!("{x} outside ±1..=±{n}"));
        }
    }
    check_distinct(cur, &points)?;
    let mut images: Vec<i32> = (1..=n as i32).collect();
    let mut set = |x: i64, y: i64| {
        if x > 0 {
            images[x as usize - 1] = y as i32;
        } else {
            images[(-x) as usize - 1] = -y as i32;
        }
    };
    let len = points.len();
    for (k, &(x, _)) in points.iter().enumerate() {
        let next = if k + 1 < len {
            points[k + 1].0
        } else if balanced {
            -points[0].0
        } else {
            points[0].0
        };
        set(x, next);
    }
    Ok(Element::B(SignedPerm::from_images(images)))
}

fn factor_i2(cur: &mut Cursor, m: u32) -> Result<Element, ParseError> {
    let start = cur.pos;
    let kind = cur.peek();
    match kind {
        Some(b'e') => {
            cur.pos += 1;
            Ok(Element::I2(Dihedral::rotation(m, 0)))
        }
        Some(b'r') | Some(b's') => {
            cur.pos += 1;
            if !cur.peek().is_some_and(|b| b.is_ascii_digit()) {
                return cur.error(cur.pos, "expected an index");
            }
            let (index, pos) = cur.signed_int()?;
            if index >= m as i64 {
                return cur.error(pos, format!("index {index} outside 0..{m}"));
            }
            Ok(Element::I2(if kind == Some(b'r') {
                Dihedral::rotation(m, index as u32)
            } else {
                Dihedral::mirror(m, index as u32)
            }))
        }
        _ => cur.error(start, "expected 'e', 'r<k>' or 's<k>'"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str, g: GroupId) -> ParseError {
        parse_element(text, g).unwrap_err()
    }

    #[test]
    fn identity_forms() {
        assert!(parse_element("e", GroupId::a(3)).unwrap().is_identity());
        assert!(parse_element(" e e ", GroupId::b(2)).unwrap().is_identity());
        assert!(parse_element("(2)", GroupId::a(3)).unwrap().is_identity());
        assert!(parse_element("e", GroupId::i2(5)).unwrap().is_identity());
    }

    #[test]
    fn comma_and_space_separators() {
        let g = GroupId::a(3);
        assert_eq!(
            parse_element("(1,3,2)", g).unwrap(),
            parse_element("(1 3 2)", g).unwrap()
        );
        let g = GroupId::b(3);
        assert_eq!(
            parse_element("((1, -2))", g).unwrap(),
            parse_element("((1,-2))", g).unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        let g = GroupId::a(2);
        assert_eq!(err("(1 4)", g).position, 3);
        assert_eq!(err("(1 2 1)", g).position, 5);
        assert_eq!(err("(1 2", g).position, 4);
        assert_eq!(err("(1 2)x", g).position, 5);
        assert_eq!(err("", g).position, 0);
        assert_eq!(err("()", g).position, 0);
        let g = GroupId::b(2);
        assert_eq!(err("((1,-1))", g).position, 4);
        assert_eq!(err("(1 2)", g).position, 0);
        assert_eq!(err("[0]", g).position, 1);
        assert_eq!(err("[3]", g).position, 1);
        let g = GroupId::i2(4);
        assert_eq!(err("s4", g).position, 1);
        assert_eq!(err("r", g).position, 1);
        assert_eq!(err("t1", g).position, 0);
    }

    #[test]
    fn dihedral_products() {
        let g = GroupId::i2(5);
        let w = parse_element("s2s0", g).unwrap();
        assert_eq!(w.to_string(), "r2");
        assert_eq!(parse_element("r1s0", g).unwrap().to_string(), "s1");
    }
}
