//! Finite point sets and rectangular windows of `Z²`, with CSV and PGM
//! serialisation.
//!
//! CSV: one `m1,m2` line per point, points in sorted order.
//! PGM: binary `P5` greymap covering a box, `maxval` 255, one byte per
//! lattice site (255 for a member, 0 otherwise). Rows run from `y_max` down to
//! `y_min`; columns from `x_min` to `x_max`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Point = (i64, i64);

/// Inclusive rectangle `[x_min, x_max] × [y_min, y_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeBox {
    x_min: i64,
    x_max: i64,
    y_min: i64,
    y_max: i64,
}

impl LatticeBox {
    pub fn new(x_min: i64, x_max: i64, y_min: i64, y_max: i64) -> Result<Self> {
        if x_min > x_max || y_min > y_max {
            return Err(Error::InvalidArgument(format!(
                "empty box [{x_min},{x_max}]x[{y_min},{y_max}]"
            )));
        }
        let side = |lo: i64, hi: i64| (hi as i128 - lo as i128 + 1) as u128;
        if side(x_min, x_max)
            .checked_mul(side(y_min, y_max))
            .is_none_or(|area| area > u64::MAX as u128)
        {
            return Err(Error::InvalidArgument(format!(
                "box [{x_min},{x_max}]x[{y_min},{y_max}] is too large"
            )));
        }
        Ok(LatticeBox {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// The centred square `[-n, n]²`. Panics for `n >= 2^31`.
    pub fn centered(n: u32) -> Self {
        assert!(n < 1 << 31, "box radius {n} too large");
        let n = n as i64;
        LatticeBox {
            x_min: -n,
            x_max: n,
            y_min: -n,
            y_max: n,
        }
    }

    pub fn x_min(&self) -> i64 {
        self.x_min
    }
    pub fn x_max(&self) -> i64 {
        self.x_max
    }
    pub fn y_min(&self) -> i64 {
        self.y_min
    }
    pub fn y_max(&self) -> i64 {
        self.y_max
    }

    pub fn width(&self) -> u64 {
        (self.x_max as i128 - self.x_min as i128) as u64 + 1
    }

    pub fn height(&self) -> u64 {
        (self.y_max as i128 - self.y_min as i128) as u64 + 1
    }

    pub fn area(&self) -> u64 {
        self.width() * self.height()
    }

    pub fn contains(&self, (x, y): Point) -> bool {
        (self.x_min..=self.x_max).contains(&x) && (self.y_min..=self.y_max).contains(&y)
    }

    pub fn contains_i128(&self, (x, y): (i128, i128)) -> bool {
        (self.x_min as i128..=self.x_max as i128).contains(&x)
            && (self.y_min as i128..=self.y_max as i128).contains(&y)
    }

    /// Points in row-major order (`y` outer, `x` inner, both ascending).
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (self.y_min..=self.y_max).flat_map(move |y| (self.x_min..=self.x_max).map(move |x| (x, y)))
    }

    /// Largest absolute coordinates `(max |x|, max |y|)`.
    pub fn max_abs(&self) -> (u64, u64) {
        (
            self.x_min.unsigned_abs().max(self.x_max.unsigned_abs()),
            self.y_min.unsigned_abs().max(self.y_max.unsigned_abs()),
        )
    }

    /// Disjoint sub-boxes of at most `rows` rows each, bottom to top.
    pub fn row_blocks(&self, rows: u64) -> Vec<LatticeBox> {
        let rows = rows.max(1) as i64;
        let mut out = Vec::new();
        let mut y = self.y_min;
        while y <= self.y_max {
            let top = (y + rows - 1).min(self.y_max);
            out.push(LatticeBox { y_min: y, y_max: top, ..*self });
            y = top + 1;
        }
        out
    }
}

impl fmt::Display for LatticeBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.x_min, self.x_max, self.y_min, self.y_max)
    }
}

/// Parses `x0,x1,y0,y1`.
impl FromStr for LatticeBox {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [x0, x1, y0, y1] = parts.as_slice() else {
            return Err(Error::Parse(format!(
                "box needs four comma-separated integers, got {s:?}"
            )));
        };
        let num = |t: &str| {
            t.parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad box coordinate {t:?}: {e}")))
        };
        LatticeBox::new(num(x0)?, num(x1)?, num(y0)?, num(y1)?)
    }
}

/// A sorted, deduplicated finite subset of `Z²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new() -> Self {
        PointSet { points: Vec::new() }
    }

    pub fn from_sorted_unchecked(points: Vec<Point>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        PointSet { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn translate(&self, (tx, ty): Point) -> PointSet {
        self.iter().map(|&(x, y)| (x + tx, y + ty)).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.points.len() * 8);
        for (x, y) in &self.points {
            out.push_str(&format!("{x},{y}\n"));
        }
        out
    }

    /// Parses `m1,m2` lines; blank lines are skipped.
    pub fn from_csv(text: &str) -> Result<PointSet> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (x, y) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("line {}: expected m1,m2", lineno + 1)))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
            };
            points.push((parse(x)?, parse(y)?));
        }
        Ok(points.into_iter().collect())
    }

    /// Binary greymap of the box; points outside the box are ignored.
    pub fn to_pgm(&self, window: &LatticeBox) -> Vec<u8> {
        let (w, h) = (window.width() as usize, window.height() as usize);
        let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
        let header = out.len();
        out.resize(header + w * h, 0);
        for &(x, y) in &self.points {
            if window.contains((x, y)) {
                let row = (window.y_max() - y) as usize;
                let col = (x - window.x_min()) as usize;
                out[header + row * w + col] = 255;
            }
        }
        out
    }

    /// Inverse of [`PointSet::to_pgm`]: nonzero pixels become points of the
    /// box whose lower-left corner is `origin`.
    pub fn from_pgm(bytes: &[u8], origin: Point) -> Result<(PointSet, LatticeBox)> {
        let (width, height, maxval, data) = parse_pgm(bytes)?;
        if maxval == 0 || maxval > 255 {
            return Err(Error::Parse(format!("unsupported maxval {maxval}")));
        }
        let window = LatticeBox::new(
            origin.0,
            origin.0 + width as i64 - 1,
            origin.1,
            origin.1 + height as i64 - 1,
        )?;
        let mut points = Vec::new();
        for (i, &px) in data.iter().enumerate() {
            if px != 0 {
                let (row, col) = (i / width, i % width);
                points.push((origin.0 + col as i64, window.y_max() - row as i64));
            }
        }
        Ok((points.into_iter().collect(), window))
    }
}

fn parse_pgm(bytes: &[u8]) -> Result<(usize, usize, u32, &[u8])> {
    let err = |m: &str| Error::Parse(format!("PGM: {m}"));
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(err("missing P5 magic"));
    }
    let mut pos = 2;
    let mut fields = [0u64; 3];
    for field in fields.iter_mut() {
        // Whitespace and '#' comments separate header fields.
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if start == pos {
            return Err(err("expected a header number"));
        }
        let text = std::str::from_utf8(&bytes[start..pos]).map_err(|_| err("header"))?;
        *field = text.parse().map_err(|_| err("header number out of range"))?;
    }
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(err("header must end in whitespace"));
    }
    pos += 1;
    let [w, h, maxval] = fields;
    if w == 0 || h == 0 {
        return Err(err("zero dimension"));
    }
    let size = w
        .checked_mul(h)
        .filter(|&s| s <= (bytes.len() - pos) as u64)
        .ok_or_else(|| err("truncated raster"))?;
    let data = &bytes[pos..pos + size as usize];
    Ok((w as usize, h as usize, maxval.min(u32::MAX as u64) as u32, data))
}

impl FromIterator<Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        let mut points: Vec<Point> = iter.into_iter().collect();
        points.sort_unstable();
        points.dedup();
        PointSet { points }
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}
