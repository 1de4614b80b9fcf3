//! Text syntax for coefficient fields: `Q`, `F5`, `Q(t)`, `F2(a)`, `Q(s,t)`,
//! `Q[s|s^2-2]`, `F2(a)[b|b^2+a]`.

use super::field::Field;
use super::ArithError;
use crate::mpoly::{parse_poly, Ring};

pub fn parse_field(text: &str) -> Result<Field, ArithError> {
    let err = |pos: usize, msg: &str| ArithError::BadDescriptor {
        text: text.to_string(),
        pos,
        msg: msg.to_string(),
    };
    let s: Vec<char> = text.chars().collect();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < s.len() && s[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    let mut field = match s.get(i) {
        Some('Q') => {
            i += 1;
            Field::rationals()
        }
        Some('F') => {
            i += 1;
            let start = i;
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = s[start..i].iter().collect();
            let p: u64 = digits
                .parse()
                .map_err(|_| err(start, "expected a prime after 'F'"))?;
            Field::prime(p)?
        }
        _ => return Err(err(i, "expected 'Q' or 'F<p>'")),
    };
    loop {
        skip_ws(&mut i);
        match s.get(i) {
            None => return Ok(field),
            Some('(') => {
                let close = s[i..]
                    .iter()
                    .position(|&c| c == ')')
                    .map(|k| i + k)
                    .ok_or_else(|| err(i, "unclosed '('"))?;
                let inner: String = s[i + 1..close].iter().collect();
                for name in inner.split(',') {
                    field = Field::rational_functions(&field, name.trim())?;
                }
                i = close + 1;
            }
            Some('[') => {
                let close = s[i..]
                    .iter()
                    .position(|&c| c == ']')
                    .map(|k| i + k)
                    .ok_or_else(|| err(i, "unclosed '['"))?;
                let inner: String = s[i + 1..close].iter().collect();
                let (gen, poly) = inner
                    .split_once('|')
                    .ok_or_else(|| err(i, "expected '[gen|minimal polynomial]'"))?;
                let gen = gen.trim();
                let ring = Ring::new(&field, &[gen]).map_err(|e| err(i + 1, &e.to_string()))?;
                let f = parse_poly(poly, &ring).map_err(|e| err(i, &e.to_string()))?;
                let minpoly = f.to_upoly(0).expect("single-variable ring");
                field = Field::simple_extension(&field, gen, minpoly)?;
                i = close + 1;
            }
            Some(_) => return Err(err(i, "expected '(', '[' or end of descriptor")),
        }
    }
}
