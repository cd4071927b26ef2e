//! Finite pointed monoids, the coefficient objects for everything else.
//!
//! A pointed monoid has a basepoint `*` (index 0) which is absorbing and a
//! two-sided unit `1` (index 1).  It may carry an anti-involution, i.e. a
//! self-inverse map with `i(xy) = i(y) i(x)`.

use std::fmt;

use crate::error::Error;

/// A finite pointed monoid.  Element 0 is the basepoint, element 1 the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedMonoid {
    size: usize,
    mul: Vec<Vec<usize>>,
    inv: Option<Vec<usize>>,
    name: String,
}

impl PointedMonoid {
    /// Build a monoid from its multiplication table, checking all invariants.
    pub fn new(mul: Vec<Vec<usize>>, inv: Option<Vec<usize>>) -> Result<Self, Error> {
        let m = PointedMonoid {
            size: mul.len(),
            mul,
            inv,
            name: String::new(),
        };
        m.validate()?;
        Ok(m)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    fn validate(&self) -> Result<(), Error> {
        let n = self.size;
        if n < 2 {
            return Err(Error::invariant("monoid needs at least basepoint and unit"));
        }
        if self.mul.len() != n || self.mul.iter().any(|row| row.len() != n) {
            return Err(Error::invariant("multiplication table is not n by n"));
        }
        for row in &self.mul {
            for &v in row {
                if v >= n {
                    return Err(Error::invariant("multiplication table entry out of range"));
                }
            }
        }
        for x in 0..n {
            if self.mul[0][x] != 0 || self.mul[x][0] != 0 {
                return Err(Error::invariant("basepoint must be absorbing"));
            }
            if self.mul[1][x] != x || self.mul[x][1] != x {
                return Err(Error::invariant("element 1 must be a two-sided unit"));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.mul[self.mul[x][y]][z] != self.mul[x][self.mul[y][z]] {
                        return Err(Error::invariant("multiplication is not associative"));
                    }
                }
            }
        }
        if let Some(inv) = &self.inv {
            if inv.len() != n {
                return Err(Error::invariant("involution table has wrong length"));
            }
            if inv[0] != 0 || inv[1] != 1 {
                return Err(Error::invariant("involution must fix basepoint and unit"));
            }
            for x in 0..n {
                if inv[x] >= n || inv[inv[x]] != x {
                    return Err(Error::invariant("involution is not self-inverse"));
                }
            }
            for x in 0..n {
                for y in 0..n {
                    if inv[self.mul[x][y]] != self.mul[inv[y]][inv[x]] {
                        return Err(Error::invariant("involution must anti-commute with product"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of non-basepoint elements.
    pub fn reduced_size(&self) -> usize {
        self.size - 1
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    /// Product of a sequence, empty product is the unit.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(1, |acc, &x| self.mul[acc][x])
    }

    pub fn has_involution(&self) -> bool {
        self.inv.is_some()
    }

    pub fn involute(&self, x: usize) -> Result<usize, Error> {
        match &self.inv {
            Some(inv) => Ok(inv[x]),
            None => Err(Error::precondition("monoid has no involution")),
        }
    }

    /// The two-point monoid {*, 1}.
    pub fn trivial() -> Self {
        PointedMonoid::new(vec![vec![0, 0], vec![0, 1]], Some(vec![0, 1]))
            .expect("trivial monoid is valid")
            .with_name("trivial")
    }

    /// The cyclic group of order k with a disjoint basepoint adjoined, with
    /// inversion as the involution.
    pub fn cyclic_group(k: usize) -> Self {
        let n = k + 1;
        let mut mul = vec![vec![0usize; n]; n];
        for a in 0..k {
            for b in 0..k {
                mul[a + 1][b + 1] = (a + b) % k + 1;
            }
        }
        let inv = (0..n)
            .map(|x| if x == 0 { 0 } else { (k - (x - 1)) % k + 1 })
            .collect();
        PointedMonoid::new(mul, Some(inv))
            .expect("cyclic group monoid is valid")
            .with_name(&format!("c{k}"))
    }

    /// {*, 1, a} with a*a = a; commutative, identity involution.
    pub fn idempotent() -> Self {
        let mul = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]];
        PointedMonoid::new(mul, Some(vec![0, 1, 2]))
            .expect("idempotent monoid is valid")
            .with_name("idem")
    }

    /// {*, 1, a, b} with xy = y whenever x, y are non-unit.  Not commutative
    /// and admits no anti-involution; useful as a negative control.
    pub fn right_zero_band() -> Self {
        let mul = vec![
            vec![0, 0, 0, 0],
            vec![0, 1, 2, 3],
            vec![0, 2, 2, 3],
            vec![0, 3, 2, 3],
        ];
        PointedMonoid::new(mul, None)
            .expect("right zero band is valid")
            .with_name("rzb")
    }

    /// Enumerate all pointed monoids of the given size by brute force over
    /// multiplication tables.  Small sizes only.
    pub fn enumerate_all(size: usize) -> Vec<PointedMonoid> {
        Self::valid_tables(size)
            .into_iter()
            .filter_map(|mul| PointedMonoid::new(mul, None).ok())
            .collect()
    }

    /// Enumerate all involutive pointed monoids of the given size (one
    /// choice of involution per admissible table).  Small sizes only.
    pub fn enumerate_involutive(size: usize) -> Vec<PointedMonoid> {
        let mut out = Vec::new();
        for mul in Self::valid_tables(size) {
            for inv in involution_candidates(size) {
                if (0..size).all(|x| (0..size).all(|y| inv[mul[x][y]] == mul[inv[y]][inv[x]])) {
                    if let Ok(m) = PointedMonoid::new(mul.clone(), Some(inv)) {
                        out.push(m);
                    }
                    break;
                }
            }
        }
        out
    }

    fn valid_tables(size: usize) -> Vec<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        if size < 2 {
            return out;
        }
        let free = size - 2; // elements 2..size are unconstrained
        let cells = free * free;
        let total = size.pow(cells as u32);
        for code in 0..total {
            let mut mul = vec![vec![0usize; size]; size];
            for x in 0..size {
                mul[1][x] = x;
                mul[x][1] = x;
            }
            let mut c = code;
            for x in 2..size {
                for y in 2..size {
                    mul[x][y] = c % size;
                    c /= size;
                }
            }
            let mut ok = true;
            'assoc: for x in 0..size {
                for y in 0..size {
                    for z in 0..size {
                        if mul[mul[x][y]][z] != mul[x][mul[y][z]] {
                            ok = false;
                            break 'assoc;
                        }
                    }
                }
            }
            if ok {
                out.push(mul);
            }
        }
        out
    }

    /// Parse the monoid text format: first line `n`, then a flags line
    /// `unit=1 basepoint=0 involution={yes|no}`, then n rows of the
    /// multiplication table, then (if involutive) one row for the involution.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::parse("missing size line"))?
            .parse()
            .map_err(|_| Error::parse("size line is not an integer"))?;
        let flags = lines.next().ok_or_else(|| Error::parse("missing flags line"))?;
        let mut involution = false;
        for field in flags.split_whitespace() {
            match field.split_once('=') {
                Some(("unit", "1")) | Some(("basepoint", "0")) => {}
                Some(("involution", "yes")) => involution = true,
                Some(("involution", "no")) => involution = false,
                _ => return Err(Error::parse(&format!("bad flag `{field}`"))),
            }
        }
        let mut mul = Vec::with_capacity(n);
        for _ in 0..n {
            let row = lines.next().ok_or_else(|| Error::parse("missing table row"))?;
            mul.push(parse_row(row, n)?);
        }
        let inv = if involution {
            let row = lines.next().ok_or_else(|| Error::parse("missing involution row"))?;
            Some(parse_row(row, n)?)
        } else {
            None
        };
        PointedMonoid::new(mul, inv)
    }

    /// Serialize in the text format accepted by [`PointedMonoid::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}\nunit=1 basepoint=0 involution={}\n",
            self.size,
            if self.inv.is_some() { "yes" } else { "no" }
        );
        for row in &self.mul {
            let words: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            s.push_str(&words.join(" "));
            s.push('\n');
        }
        if let Some(inv) = &self.inv {
            let words: Vec<String> = inv.iter().map(|v| v.to_string()).collect();
            s.push_str(&words.join(" "));
            s.push('\n');
        }
        s
    }
}

fn parse_row(line: &str, n: usize) -> Result<Vec<usize>, Error> {
    let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
    let row = row.map_err(|_| Error::parse("table entry is not an integer"))?;
    if row.len() != n {
        return Err(Error::parse("table row has wrong length"));
    }
    Ok(row)
}

fn involution_candidates(size: usize) -> Vec<Vec<usize>> {
    // all self-inverse maps fixing 0 and 1
    fn go(size: usize, x: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if x == size {
            out.push(cur.clone());
            return;
        }
        if cur[x] != usize::MAX {
            go(size, x + 1, cur, out);
            return;
        }
        for y in x..size {
            if y == x || cur[y] == usize::MAX {
                cur[x] = y;
                let old = cur[y];
                cur[y] = x;
                go(size, x + 1, cur, out);
                cur[y] = old;
                cur[x] = usize::MAX;
            }
        }
    }
    let mut cur = vec![usize::MAX; size];
    cur[0] = 0;
    cur[1] = 1;
    let mut out = Vec::new();
    go(size, 2, &mut cur, &mut out);
    out
}

impl fmt::Display for PointedMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointedMonoid(n={}, name={})", self.size, self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_are_valid() {
        for k in 1..=5 {
            let m = PointedMonoid::cyclic_group(k);
            assert_eq!(m.size(), k + 1);
            assert!(m.has_involution());
        }
    }

    #[test]
    fn involution_anti_commutes() {
        let m = PointedMonoid::cyclic_group(4);
        for x in 0..m.size() {
            for y in 0..m.size() {
                let lhs = m.involute(m.mul(x, y)).unwrap();
                let rhs = m.mul(m.involute(y).unwrap(), m.involute(x).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rejects_non_associative_table() {
        // 3 elements, a*a = 1 but unit laws broken on purpose
        let mul = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]];
        assert!(PointedMonoid::new(mul, None).is_ok());
        let bad = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 1, 2]];
        assert!(PointedMonoid::new(bad, None).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let m = PointedMonoid::cyclic_group(3);
        let again = PointedMonoid::parse(&m.to_text()).unwrap();
        assert_eq!(m.mul, again.mul);
        assert_eq!(m.inv, again.inv);
    }

    #[test]
    fn enumerate_small_involutive() {
        let size3 = PointedMonoid::enumerate_involutive(3);
        assert!(!size3.is_empty());
        for m in &size3 {
            assert!(m.has_involution());
        }
    }
}
