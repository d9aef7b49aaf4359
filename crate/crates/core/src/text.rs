//! Text formats for algebras, elements, matrices, points, morphisms and
//! linear maps.
//!
//! ```text
//! document   = { line } ;  (* '#' starts a comment; blank lines are ignored *)
//! algebra    = "algebra" "n=" int "gens" { bits "*" int } "cap=" int ;
//! shape      = int "|" int { "," int } ;        (* all 2^n - 1 odd counts *)
//! expr       = [ sign ] term { sign term } ;
//! term       = factor { [ "*" ] factor } ;     (* product in written order *)
//! factor     = atom [ "^" int ] ;
//! atom       = rational | generator | basevar ;
//! generator  = bits index ;                    (* e.g. 011: first generator of degree 01 *)
//! basevar    = "x" index ;                     (* morphisms only *)
//! matrix     = algebra "matrix" "deg=" bits "rows=" shape "cols=" shape
//!              { expr { ";" expr } } ;
//! point      = algebra "point" "shape=" shape { expr } ;
//! morphism   = "morphism" "src=" shape "tgt=" shape "cap=" int
//!              { coord "<-" expr } ;           (* coord: y<k> or a generator name *)
//! linmap     = "linmap" "src=" shape "tgt=" shape
//!              { "block" bits ":" { rational { rational } } } ;
//! ```
//!
//! An integer token whose first n characters are bits (not all zero)
//! followed by an index without leading zero names a generator. Printers
//! write integers of that form as `k/1`.

use std::str::FromStr;

use num::{BigInt, One, Zero};

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::gmatrix::GMatrix;
use crate::grassmann::{Algebra, AlgebraSpec, GElement, Rational};
use crate::linalg::RatMatrix;
use crate::linspace::BlockDiagMap;
use crate::points::LambdaPoint;
use crate::series::{formal_algebra, Morphism, Series};
use crate::shape::GradedShape;

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn located(line: usize, column: usize, e: Error) -> Error {
    match e {
        Error::Syntax { .. } | Error::AtLocation { .. } => e,
        inner => Error::AtLocation {
            line,
            column,
            inner: Box::new(inner),
        },
    }
}

/// Prints a nonnegative coefficient so that it cannot be read back as a
/// generator name.
pub fn format_coefficient(c: &Rational, n: usize) -> String {
    let s = c.to_string();
    if c.is_integer() && generator_parts(&s, n).is_some() {
        format!("{s}/1")
    } else {
        s
    }
}

/// Splits `<bits><index>` into (degree index, 1-based index).
fn generator_parts(word: &str, n: usize) -> Option<(usize, usize)> {
    if word.len() <= n || !word.is_char_boundary(n) {
        return None;
    }
    let (bits, idx) = word.split_at(n);
    if !bits.chars().all(|c| c == '0' || c == '1') || !bits.contains('1') {
        return None;
    }
    if idx.starts_with('0') || !idx.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let j = usize::from_str_radix(bits, 2).ok()?;
    let l = idx.parse::<usize>().ok()?;
    Some((j, l))
}

/// A meaningful line: 1-based number, column of the first kept character,
/// and text with the comment removed.
#[derive(Debug, Clone)]
struct Line<'a> {
    number: usize,
    column: usize,
    text: &'a str,
}

fn lines(source: &str) -> Vec<Line<'_>> {
    source
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim_start();
            let column = body.len() - trimmed.len() + 1;
            let text = trimmed.trim_end();
            (!text.is_empty()).then_some(Line {
                number: i + 1,
                column,
                text,
            })
        })
        .collect()
}

/// Whitespace-separated words with their columns.
fn words<'a>(line: &Line<'a>) -> Vec<(usize, &'a str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((line.column + s, &line.text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((line.column + s, &line.text[s..]));
    }
    out
}

fn parse_usize(line: usize, column: usize, s: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| syntax(line, column, format!("expected a nonnegative integer, got `{s}`")))
}

fn parse_rational(line: usize, column: usize, s: &str) -> Result<Rational> {
    let bad = || syntax(line, column, format!("expected a rational number, got `{s}`"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit() || c == '/') {
        return Err(bad());
    }
    let v = match body.split_once('/') {
        Some((a, b)) => {
            let a = BigInt::from_str(a).map_err(|_| bad())?;
            let b = BigInt::from_str(b).map_err(|_| bad())?;
            if b.is_zero() {
                return Err(syntax(line, column, "zero denominator"));
            }
            Rational::new(a, b)
        }
        None => Rational::from_integer(BigInt::from_str(body).map_err(|_| bad())?),
    };
    Ok(if neg { -v } else { v })
}

/// Expects `key=value` and returns the value with its column.
fn keyed<'a>(line: &Line<'_>, word: Option<&(usize, &'a str)>, key: &str) -> Result<(usize, &'a str)> {
    let Some(&(col, w)) = word else {
        return Err(syntax(line.number, line.column + line.text.len(), format!("missing `{key}=`")));
    };
    match w.strip_prefix(key).and_then(|r| r.strip_prefix('=')) {
        Some(v) => Ok((col + key.len() + 1, v)),
        None => Err(syntax(line.number, col, format!("expected `{key}=...`, got `{w}`"))),
    }
}

pub fn parse_shape_at(line: usize, column: usize, s: &str) -> Result<GradedShape> {
    let Some((p, rest)) = s.split_once('|') else {
        return Err(syntax(line, column, format!("expected a shape p|q1,...,qN, got `{s}`")));
    };
    let mut counts = vec![parse_usize(line, column, p)?];
    let mut col = column + p.len() + 1;
    for part in rest.split(',') {
        counts.push(parse_usize(line, col, part)?);
        col += part.len() + 1;
    }
    GradedShape::new(counts).map_err(|e| located(line, column, e))
}

/// Parses a shape such as `1|1,1,1`.
pub fn parse_shape(s: &str) -> Result<GradedShape> {
    parse_shape_at(1, 1, s.trim())
}

fn parse_algebra_line(line: &Line<'_>) -> Result<Algebra> {
    let ws = words(line);
    match ws.first() {
        Some((_, "algebra")) => {}
        Some(&(col, w)) => return Err(syntax(line.number, col, format!("expected `algebra`, got `{w}`"))),
        None => unreachable!("lines are nonempty"),
    }
    let (col, nv) = keyed(line, ws.get(1), "n")?;
    let n = parse_usize(line.number, col, nv)?;
    match ws.get(2) {
        Some((_, "gens")) => {}
        Some(&(col, w)) => return Err(syntax(line.number, col, format!("expected `gens`, got `{w}`"))),
        None => return Err(syntax(line.number, line.column + line.text.len(), "missing `gens`")),
    }
    let slots = crate::degree::enumerate_degrees(n)
        .map_err(|e| located(line.number, col, e))?
        .len();
    let mut counts = vec![0usize; slots - 1];
    let mut k = 3;
    while let Some(&(col, w)) = ws.get(k) {
        if w.starts_with("cap=") {
            break;
        }
        let Some((bits, m)) = w.split_once('*') else {
            return Err(syntax(line.number, col, format!("expected `<bits>*<count>`, got `{w}`")));
        };
        let g = Degree::parse_bits(bits).map_err(|e| located(line.number, col, e))?;
        if g.rank() != n || g.is_zero() {
            return Err(syntax(line.number, col, format!("`{bits}` is not a nonzero degree of rank {n}")));
        }
        counts[g.index() - 1] += parse_usize(line.number, col + bits.len() + 1, m)?;
        k += 1;
    }
    let (col, cv) = keyed(line, ws.get(k), "cap")?;
    let cap = parse_usize(line.number, col, cv)? as u32;
    if let Some(&(col, w)) = ws.get(k + 1) {
        return Err(syntax(line.number, col, format!("unexpected `{w}`")));
    }
    AlgebraSpec::new(n, &counts, cap).map_err(|e| located(line.number, line.column, e))
}

/// Parses a one-line algebra description.
pub fn parse_algebra(source: &str) -> Result<Algebra> {
    let ls = lines(source);
    let Some(first) = ls.first() else {
        return Err(syntax(1, 1, "empty input, expected an algebra line"));
    };
    if let Some(extra) = ls.get(1) {
        return Err(syntax(extra.number, extra.column, "unexpected text after the algebra line"));
    }
    parse_algebra_line(first)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Word(&'a str),
    Plus,
    Minus,
    Star,
    Caret,
}

fn lex<'a>(line: usize, column: usize, s: &'a str) -> Result<Vec<(usize, Tok<'a>)>> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some((i, ch)) = chars.next() {
        let tok = match ch {
            c if c.is_whitespace() => continue,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            c if c.is_ascii_alphanumeric() || c == '/' => {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '/' {
                        end = j + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                Tok::Word(&s[i..end])
            }
            c => return Err(syntax(line, column + i, format!("unexpected character `{c}`"))),
        };
        out.push((column + i, tok));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Atom {
    Number(Rational),
    Generator(usize, usize),
    Base(usize),
}

struct Factor {
    column: usize,
    atom: Atom,
    exp: u32,
}

struct Term {
    negative: bool,
    factors: Vec<Factor>,
}

/// Which atoms a context accepts.
struct Ctx {
    n: usize,
    base_vars: Option<usize>,
}

fn classify(line: usize, column: usize, w: &str, ctx: &Ctx) -> Result<Atom> {
    if let Some(rest) = w.strip_prefix('x') {
        let Some(p) = ctx.base_vars else {
            return Err(syntax(line, column, format!("base variable `{w}` outside a morphism")));
        };
        let k = parse_usize(line, column + 1, rest)?;
        if k == 0 || k > p {
            return Err(syntax(line, column, format!("`{w}` is not one of x1..x{p}")));
        }
        return Ok(Atom::Base(k - 1));
    }
    if !w.contains('/') {
        if let Some((j, l)) = generator_parts(w, ctx.n) {
            return Ok(Atom::Generator(j, l));
        }
    }
    parse_rational(line, column, w).map(Atom::Number)
}

fn parse_expr(line: usize, column: usize, s: &str, ctx: &Ctx) -> Result<Vec<Term>> {
    let toks = lex(line, column, s)?;
    let end_col = column + s.len();
    let mut pos = 0;
    let mut terms = Vec::new();
    let mut first = true;
    while pos < toks.len() || first {
        let mut negative = false;
        match toks.get(pos) {
            Some((_, Tok::Plus)) => pos += 1,
            Some((_, Tok::Minus)) => {
                negative = true;
                pos += 1
            }
            Some((col, t)) if !first => {
                return Err(syntax(line, *col, format!("expected `+` or `-`, got {t:?}")))
            }
            None => return Err(syntax(line, end_col, "empty expression")),
            _ => {}
        }
        first = false;
        let mut factors = Vec::new();
        loop {
            match toks.get(pos) {
                Some(&(col, Tok::Word(w))) => {
                    let atom = classify(line, col, w, ctx)?;
                    pos += 1;
                    let mut exp = 1;
                    if let Some((_, Tok::Caret)) = toks.get(pos) {
                        pos += 1;
                        match toks.get(pos) {
                            Some(&(ecol, Tok::Word(e))) => {
                                exp = parse_usize(line, ecol, e)? as u32;
                                pos += 1;
                            }
                            Some(&(ecol, _)) => return Err(syntax(line, ecol, "expected an exponent")),
                            None => return Err(syntax(line, end_col, "expected an exponent")),
                        }
                    }
                    factors.push(Factor { column: col, atom, exp });
                }
                Some((col, Tok::Star)) if !factors.is_empty() => {
                    pos += 1;
                    if !matches!(toks.get(pos), Some((_, Tok::Word(_)))) {
                        return Err(syntax(line, *col, "`*` must be followed by a factor"));
                    }
                }
                Some((_, Tok::Plus | Tok::Minus)) | None if !factors.is_empty() => break,
                Some((col, t)) => return Err(syntax(line, *col, format!("unexpected {t:?}"))),
                None => return Err(syntax(line, end_col, "expected a term")),
            }
        }
        terms.push(Term { negative, factors });
    }
    Ok(terms)
}

/// Checks explicit powers of generators with odd self-pairing.
fn check_power(line: usize, f: &Factor, alg: &AlgebraSpec) -> Result<usize> {
    let Atom::Generator(j, l) = f.atom else {
        unreachable!("only called on generators")
    };
    let g = alg
        .generator_index(j, l - 1)
        .map_err(|e| located(line, f.column, e))?;
    if f.exp > 1 && alg.generator_degree(g).is_nilpotent_parity() {
        return Err(located(
            line,
            f.column,
            Error::ParityViolation {
                generator: alg.generator_name(g),
                exponent: f.exp,
            },
        ));
    }
    Ok(g)
}

fn element_from_terms(line: usize, alg: &Algebra, terms: &[Term]) -> Result<GElement> {
    let mut acc = GElement::zero(alg);
    for t in terms {
        let mut v = GElement::one(alg);
        for f in &t.factors {
            let base = match &f.atom {
                Atom::Number(c) => GElement::constant(alg, c.clone()),
                Atom::Generator(..) => GElement::generator_at(alg, check_power(line, f, alg)?),
                Atom::Base(_) => unreachable!("rejected by the context"),
            };
            v = &v * &base.pow(f.exp);
        }
        acc = if t.negative { &acc - &v } else { &acc + &v };
    }
    Ok(acc)
}

fn series_from_terms(line: usize, p: usize, formal: &Algebra, terms: &[Term]) -> Result<Series> {
    let mut acc = Series::zero(p, formal);
    for t in terms {
        let mut v = Series::constant(p, formal, Rational::one());
        for f in &t.factors {
            let base = match &f.atom {
                Atom::Number(c) => Series::constant(p, formal, c.clone()),
                Atom::Generator(..) => Series::formal_var(p, formal, check_power(line, f, formal)?),
                Atom::Base(k) => Series::base_var(p, formal, *k),
            };
            for _ in 0..f.exp {
                v = v.try_mul(&base)?;
            }
        }
        acc = if t.negative { acc.try_add(&v.neg())? } else { acc.try_add(&v)? };
    }
    Ok(acc)
}

fn element_at(line: usize, column: usize, s: &str, alg: &Algebra) -> Result<GElement> {
    let ctx = Ctx {
        n: alg.rank(),
        base_vars: None,
    };
    let terms = parse_expr(line, column, s, &ctx)?;
    element_from_terms(line, alg, &terms)
}

/// Parses an element expression such as `3/2 + 2 011 101 - 111^2`.
pub fn parse_element(alg: &Algebra, source: &str) -> Result<GElement> {
    let ls = lines(source);
    match ls.as_slice() {
        [l] => element_at(l.number, l.column, l.text, alg),
        [] => Err(syntax(1, 1, "empty expression")),
        [_, extra, ..] => Err(syntax(extra.number, extra.column, "expected a single line")),
    }
}

fn expect_header<'a>(line: &Line<'a>, keyword: &str) -> Result<Vec<(usize, &'a str)>> {
    let ws = words(line);
    match ws.first() {
        Some(&(_, w)) if w == keyword => Ok(ws),
        Some(&(col, w)) => Err(syntax(line.number, col, format!("expected `{keyword}`, got `{w}`"))),
        None => unreachable!("lines are nonempty"),
    }
}

fn no_trailing(line: &Line<'_>, ws: &[(usize, &str)], used: usize) -> Result<()> {
    match ws.get(used) {
        Some(&(col, w)) => Err(syntax(line.number, col, format!("unexpected `{w}`"))),
        None => Ok(()),
    }
}

fn missing_line(ls: &[Line<'_>], what: &str) -> Error {
    let number = ls.last().map_or(1, |l| l.number + 1);
    syntax(number, 1, format!("missing {what}"))
}

/// Parses an algebra line followed by a matrix.
pub fn parse_matrix(source: &str) -> Result<GMatrix> {
    let ls = lines(source);
    let alg = parse_algebra_line(ls.first().ok_or_else(|| missing_line(&ls, "algebra line"))?)?;
    let header = ls.get(1).ok_or_else(|| missing_line(&ls, "matrix header"))?;
    let ws = expect_header(header, "matrix")?;
    let (col, d) = keyed(header, ws.get(1), "deg")?;
    let degree = Degree::parse_bits(d).map_err(|e| located(header.number, col, e))?;
    let (rcol, r) = keyed(header, ws.get(2), "rows")?;
    let rows = parse_shape_at(header.number, rcol, r)?;
    let (ccol, c) = keyed(header, ws.get(3), "cols")?;
    let cols = parse_shape_at(header.number, ccol, c)?;
    no_trailing(header, &ws, 4)?;
    for (col, rank) in [(col, degree.rank()), (rcol, rows.rank()), (ccol, cols.rank())] {
        if rank != alg.rank() {
            return Err(located(
                header.number,
                col,
                Error::DimensionMismatch {
                    expected: alg.rank(),
                    found: rank,
                },
            ));
        }
    }
    let body = &ls[2..];
    if body.len() != rows.total() {
        let at = body.get(rows.total()).map_or_else(
            || missing_line(&ls, "matrix rows"),
            |l| syntax(l.number, l.column, "too many matrix rows"),
        );
        return Err(at);
    }
    let mut data = Vec::with_capacity(rows.total());
    for (r, line) in body.iter().enumerate() {
        let mut row = Vec::with_capacity(cols.total());
        let mut offset = 0;
        let cells: Vec<&str> = if cols.total() == 0 { Vec::new() } else { line.text.split(';').collect() };
        if cells.len() != cols.total() {
            return Err(syntax(
                line.number,
                line.column,
                format!("expected {} entries, found {}", cols.total(), cells.len()),
            ));
        }
        for (c, cell) in cells.iter().enumerate() {
            let col = line.column + offset + (cell.len() - cell.trim_start().len());
            let e = element_at(line.number, col, cell.trim(), &alg)?;
            let want = rows.coord_degree(r) + cols.coord_degree(c) + degree;
            if !e.is_homogeneous_of(want) {
                let (i, j) = (rows.block_of(r), cols.block_of(c));
                return Err(located(
                    line.number,
                    col,
                    Error::DegreeViolation(format!(
                        "entry ({},{}) of block ({i},{j}) is `{e}`, expected degree {want}",
                        r - rows.offset(i) + 1,
                        c - cols.offset(j) + 1
                    )),
                ));
            }
            row.push(e);
            offset += cell.len() + 1;
        }
        data.push(row);
    }
    GMatrix::from_rows(&alg, rows, cols, degree, data)
}

/// Algebra line plus matrix, as accepted by [`parse_matrix`].
pub fn write_matrix(m: &GMatrix) -> String {
    format!("{}\n{m}", m.algebra())
}

/// Parses an algebra line followed by a point.
pub fn parse_point(source: &str) -> Result<LambdaPoint> {
    let ls = lines(source);
    let alg = parse_algebra_line(ls.first().ok_or_else(|| missing_line(&ls, "algebra line"))?)?;
    let header = ls.get(1).ok_or_else(|| missing_line(&ls, "point header"))?;
    let ws = expect_header(header, "point")?;
    let (col, s) = keyed(header, ws.get(1), "shape")?;
    let shape = parse_shape_at(header.number, col, s)?;
    no_trailing(header, &ws, 2)?;
    if shape.rank() != alg.rank() {
        return Err(located(
            header.number,
            col,
            Error::DimensionMismatch {
                expected: alg.rank(),
                found: shape.rank(),
            },
        ));
    }
    let body = &ls[2..];
    if body.len() != shape.total() {
        return Err(body.get(shape.total()).map_or_else(
            || missing_line(&ls, "point components"),
            |l| syntax(l.number, l.column, "too many point components"),
        ));
    }
    let mut comps = Vec::with_capacity(body.len());
    for (k, line) in body.iter().enumerate() {
        let e = element_at(line.number, line.column, line.text, &alg)?;
        let want = shape.coord_degree(k);
        if !e.is_homogeneous_of(want) {
            return Err(located(
                line.number,
                line.column,
                Error::WrongDegreeComponent {
                    slot: k + 1,
                    expected: want.to_string(),
                },
            ));
        }
        comps.push(e);
    }
    LambdaPoint::new(&alg, shape, comps)
}

pub fn write_point(p: &LambdaPoint) -> String {
    format!("{}\n{p}", p.algebra())
}

/// Index of a target coordinate written as `y<k>` or `<bits><ℓ>`.
fn target_coord(line: usize, column: usize, w: &str, target: &GradedShape) -> Result<usize> {
    if let Some(rest) = w.strip_prefix('y') {
        let k = parse_usize(line, column + 1, rest)?;
        if k == 0 || k > target.count(0) {
            return Err(syntax(line, column, format!("`{w}` is not an even target coordinate")));
        }
        return Ok(k - 1);
    }
    match generator_parts(w, target.rank()) {
        Some((j, l)) if l <= target.count(j) => Ok(target.offset(j) + l - 1),
        _ => Err(syntax(line, column, format!("`{w}` is not a target coordinate"))),
    }
}

/// Parses a morphism given by its coordinate pullbacks.
pub fn parse_morphism(source: &str) -> Result<Morphism> {
    let ls = lines(source);
    let header = ls.first().ok_or_else(|| missing_line(&ls, "morphism header"))?;
    let ws = expect_header(header, "morphism")?;
    let (scol, s) = keyed(header, ws.get(1), "src")?;
    let src = parse_shape_at(header.number, scol, s)?;
    let (tcol, t) = keyed(header, ws.get(2), "tgt")?;
    let tgt = parse_shape_at(header.number, tcol, t)?;
    let (ccol, c) = keyed(header, ws.get(3), "cap")?;
    let cap = parse_usize(header.number, ccol, c)? as u32;
    no_trailing(header, &ws, 4)?;
    src.same_rank(&tgt).map_err(|e| located(header.number, tcol, e))?;
    let formal = formal_algebra(&src, cap).map_err(|e| located(header.number, scol, e))?;
    let ctx = Ctx {
        n: src.rank(),
        base_vars: Some(src.count(0)),
    };
    let mut pullbacks: Vec<Option<Series>> = vec![None; tgt.total()];
    for line in &ls[1..] {
        let Some((lhs, rhs)) = line.text.split_once("<-") else {
            return Err(syntax(line.number, line.column, "expected `<coordinate> <- <expression>`"));
        };
        let name = lhs.trim();
        let k = target_coord(line.number, line.column, name, &tgt)?;
        if pullbacks[k].is_some() {
            return Err(syntax(line.number, line.column, format!("pullback of `{name}` given twice")));
        }
        let rcol = line.column + lhs.len() + 2;
        let lead = rhs.len() - rhs.trim_start().len();
        let terms = parse_expr(line.number, rcol + lead, rhs.trim(), &ctx)?;
        let series = series_from_terms(line.number, src.count(0), &formal, &terms)?;
        let want = tgt.coord_degree(k);
        if let Some(bad) = series.term_degrees().into_iter().find(|g| *g != want) {
            return Err(located(
                line.number,
                rcol + lead,
                Error::DegreeViolation(format!(
                    "pullback of `{name}` has a term of degree {bad}, expected {want}"
                )),
            ));
        }
        pullbacks[k] = Some(series);
    }
    let pullbacks = pullbacks
        .into_iter()
        .enumerate()
        .map(|(k, s)| {
            s.ok_or_else(|| {
                Error::InvalidMorphism(format!("no pullback for `{}`", tgt.coord_name(k, "y")))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(src, tgt, cap, pullbacks)
}

/// Parses a block-diagonal real linear map.
pub fn parse_linmap(source: &str) -> Result<BlockDiagMap> {
    let ls = lines(source);
    let header = ls.first().ok_or_else(|| missing_line(&ls, "linmap header"))?;
    let ws = expect_header(header, "linmap")?;
    let (scol, s) = keyed(header, ws.get(1), "src")?;
    let src = parse_shape_at(header.number, scol, s)?;
    let (tcol, t) = keyed(header, ws.get(2), "tgt")?;
    let tgt = parse_shape_at(header.number, tcol, t)?;
    no_trailing(header, &ws, 3)?;
    src.same_rank(&tgt).map_err(|e| located(header.number, tcol, e))?;
    let mut blocks: Vec<Option<RatMatrix>> = vec![None; src.num_blocks()];
    let mut pos = 1;
    while pos < ls.len() {
        let line = &ls[pos];
        let ws = expect_header(line, "block")?;
        let Some(&(col, label)) = ws.get(1) else {
            return Err(syntax(line.number, line.column, "expected `block <bits>:`"));
        };
        let bits = label
            .strip_suffix(':')
            .ok_or_else(|| syntax(line.number, col, "block label must end with `:`"))?;
        let g = Degree::parse_bits(bits).map_err(|e| located(line.number, col, e))?;
        if g.rank() != src.rank() {
            return Err(syntax(line.number, col, format!("`{bits}` has the wrong rank")));
        }
        no_trailing(line, &ws, 2)?;
        let i = g.index();
        if blocks[i].is_some() {
            return Err(syntax(line.number, col, format!("block {bits} given twice")));
        }
        let (rows, cols) = (tgt.count(i), src.count(i));
        let nrows = if cols == 0 { 0 } else { rows };
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..nrows {
            let Some(row) = ls.get(pos + 1 + r) else {
                return Err(missing_line(&ls, &format!("rows of block {bits}")));
            };
            let vals = words(row);
            if vals.len() != cols {
                return Err(syntax(
                    row.number,
                    row.column,
                    format!("expected {cols} entries in block {bits}, found {}", vals.len()),
                ));
            }
            for (c, v) in vals {
                data.push(parse_rational(row.number, c, v)?);
            }
        }
        if cols == 0 {
            data.clear();
        }
        blocks[i] = Some(RatMatrix::from_rows(rows, cols, if cols == 0 { Vec::new() } else { data }));
        pos += 1 + nrows;
    }
    let blocks = blocks
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| missing_line(&ls, &format!("block {}", src.degree(i)))))
        .collect::<Result<Vec<_>>>()?;
    BlockDiagMap::new(src, tgt, blocks)
}
