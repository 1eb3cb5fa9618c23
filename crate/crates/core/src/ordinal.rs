//! The augmented simplex category: finite ordinals `[n]` with `n >= -1`,
//! monotone maps between them, surjections in collapsed-position form, and
//! the ordinal sum `[p] + [q] = [p + q + 1]`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("ordinal [{0}] is out of range")]
    BadOrdinal(i32),
    #[error("expected {expected} values, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("value {value} at position {pos} does not fit in [{dst}]")]
    OutOfRange { pos: usize, value: usize, dst: i32 },
    #[error("values decrease at position {0}")]
    NotMonotone(usize),
    #[error("cannot compose {outer_src}<-{outer_dst} after a map into {inner_dst}")]
    Composition {
        outer_src: Ordinal,
        outer_dst: Ordinal,
        inner_dst: Ordinal,
    },
    #[error("{0} is not a surjection")]
    NotSurjective(String),
    #[error("collapsed positions {positions:?} are invalid for a surjection out of {src}")]
    BadCollapse { src: Ordinal, positions: Vec<usize> },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// The finite ordinal `[n] = {0 < 1 < ... < n}`; `[-1]` is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal(i32);

impl Ordinal {
    pub const EMPTY: Ordinal = Ordinal(-1);

    pub fn new(n: i32) -> Result<Self, OrdinalError> {
        if n < -1 {
            return Err(OrdinalError::BadOrdinal(n));
        }
        Ok(Ordinal(n))
    }

    pub fn n(self) -> i32 {
        self.0
    }

    /// Number of elements, `n + 1`.
    pub fn len(self) -> usize {
        (self.0 + 1) as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == -1
    }

    /// Ordinal sum on objects.
    pub fn sum(self, other: Ordinal) -> Ordinal {
        Ordinal(self.0 + other.0 + 1)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

pub fn ordinal_sum_obj(a: Ordinal, b: Ordinal) -> Ordinal {
    a.sum(b)
}

/// A weakly increasing map `[src] -> [dst]`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    src: Ordinal,
    dst: Ordinal,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(src: Ordinal, dst: Ordinal, values: Vec<usize>) -> Result<Self, OrdinalError> {
        if values.len() != src.len() {
            return Err(OrdinalError::WrongLength {
                expected: src.len(),
                found: values.len(),
            });
        }
        for (pos, &value) in values.iter().enumerate() {
            if value >= dst.len() {
                return Err(OrdinalError::OutOfRange {
                    pos,
                    value,
                    dst: dst.n(),
                });
            }
            if pos > 0 && values[pos - 1] > value {
                return Err(OrdinalError::NotMonotone(pos));
            }
        }
        Ok(MonotoneMap { src, dst, values })
    }

    fn raw(src: Ordinal, dst: Ordinal, values: Vec<usize>) -> Self {
        debug_assert!(MonotoneMap::new(src, dst, values.clone()).is_ok());
        MonotoneMap { src, dst, values }
    }

    pub fn identity(o: Ordinal) -> Self {
        MonotoneMap::raw(o, o, (0..o.len()).collect())
    }

    /// The unique map out of the empty ordinal.
    pub fn from_empty(dst: Ordinal) -> Self {
        MonotoneMap::raw(Ordinal::EMPTY, dst, Vec::new())
    }

    /// The coface `[n-1] -> [n]` that skips `i`.
    pub fn coface(n: i32, i: usize) -> Self {
        assert!(
            n >= 0 && i <= n as usize,
            "coface {i} out of range for [{n}]"
        );
        let values = (0..n as usize)
            .map(|k| if k < i { k } else { k + 1 })
            .collect();
        MonotoneMap::raw(Ordinal(n - 1), Ordinal(n), values)
    }

    /// The codegeneracy `[n+1] -> [n]` that hits `i` twice.
    pub fn codegeneracy(n: i32, i: usize) -> Self {
        assert!(
            n >= 0 && i <= n as usize,
            "codegeneracy {i} out of range for [{n}]"
        );
        let values = (0..=(n as usize + 1))
            .map(|k| if k <= i { k } else { k - 1 })
            .collect();
        MonotoneMap::raw(Ordinal(n + 1), Ordinal(n), values)
    }

    /// Every monotone map `[src] -> [dst]`, in lexicographic order of values.
    pub fn all(src: Ordinal, dst: Ordinal) -> Vec<Self> {
        let mut out = Vec::new();
        if src.is_empty() {
            out.push(MonotoneMap::from_empty(dst));
            return out;
        }
        if dst.is_empty() {
            return out;
        }
        let mut values = vec![0usize; src.len()];
        loop {
            out.push(MonotoneMap::raw(src, dst, values.clone()));
            // advance to the next weakly increasing sequence
            let top = dst.len() - 1;
            let Some(pos) = values.iter().rposition(|&v| v < top) else {
                break;
            };
            let next = values[pos] + 1;
            for v in &mut values[pos..] {
                *v = next;
            }
        }
        out
    }

    /// Every injective monotone map `[src] -> [dst]`, lexicographically.
    pub fn injections(src: Ordinal, dst: Ordinal) -> Vec<Self> {
        MonotoneMap::all(src, dst)
            .into_iter()
            .filter(MonotoneMap::is_injective)
            .collect()
    }

    pub fn src(&self) -> Ordinal {
        self.src
    }

    pub fn dst(&self) -> Ordinal {
        self.dst
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, k: usize) -> usize {
        self.values[k]
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.values.iter().enumerate().all(|(k, &v)| k == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        // monotone, so surjective iff it starts at 0, ends at dst and never skips
        if self.src.is_empty() {
            return self.dst.is_empty();
        }
        self.values[0] == 0
            && *self.values.last().unwrap() == self.dst.len() - 1
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MonotoneMap) -> Result<MonotoneMap, OrdinalError> {
        if inner.dst != self.src {
            return Err(OrdinalError::Composition {
                outer_src: self.src,
                outer_dst: self.dst,
                inner_dst: inner.dst,
            });
        }
        let values = inner.values.iter().map(|&k| self.values[k]).collect();
        Ok(MonotoneMap::raw(inner.src, self.dst, values))
    }

    /// The unique factorization `self = mono ∘ epi` with `epi` surjective and
    /// `mono` injective.
    pub fn epi_mono_factor(&self) -> (DegeneracyOp, MonotoneMap) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let mid = Ordinal(image.len() as i32 - 1);
        let collapsed = self
            .values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(j, _)| j)
            .collect();
        let epi = DegeneracyOp {
            src: self.src,
            dst: mid,
            collapsed,
        };
        (epi, MonotoneMap::raw(mid, self.dst, image))
    }
}

/// Ordinal sum on arrows: `f0` acts on the first block, `f1` (shifted) on the
/// second.
pub fn ordinal_sum_map(f0: &MonotoneMap, f1: &MonotoneMap) -> MonotoneMap {
    let shift = f0.dst.len();
    let values = f0
        .values
        .iter()
        .copied()
        .chain(f1.values.iter().map(|&v| v + shift))
        .collect();
    MonotoneMap::raw(f0.src.sum(f1.src), f0.dst.sum(f1.dst), values)
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "map {} {} :", self.src.n(), self.dst.n())?;
        for v in &self.values {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

fn parse_header<'a>(s: &'a str, keyword: &str) -> Result<(i32, i32, Vec<&'a str>), OrdinalError> {
    let bad = || OrdinalError::Parse(s.to_string());
    let mut tokens = s.split_whitespace();
    if tokens.next() != Some(keyword) {
        return Err(bad());
    }
    let src = tokens.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    let dst = tokens.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    if tokens.next() != Some(":") {
        return Err(bad());
    }
    Ok((src, dst, tokens.collect()))
}

fn parse_numbers(s: &str, tokens: &[&str]) -> Result<Vec<usize>, OrdinalError> {
    tokens
        .iter()
        .map(|t| t.parse().map_err(|_| OrdinalError::Parse(s.to_string())))
        .collect()
}

impl FromStr for MonotoneMap {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (src, dst, rest) = parse_header(s, "map")?;
        let values = parse_numbers(s, &rest)?;
        MonotoneMap::new(Ordinal::new(src)?, Ordinal::new(dst)?, values)
    }
}

/// A surjection `[n] ->> [m]`, encoded by the positions `j` where it
/// identifies `j` and `j + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegeneracyOp {
    src: Ordinal,
    dst: Ordinal,
    collapsed: Vec<usize>,
}

impl DegeneracyOp {
    pub fn new(src: Ordinal, collapsed: Vec<usize>) -> Result<Self, OrdinalError> {
        let valid = collapsed.windows(2).all(|w| w[0] < w[1])
            && collapsed.iter().all(|&j| j + 1 < src.len());
        if !valid {
            return Err(OrdinalError::BadCollapse {
                src,
                positions: collapsed,
            });
        }
        let dst = Ordinal(src.n() - collapsed.len() as i32);
        Ok(DegeneracyOp {
            src,
            dst,
            collapsed,
        })
    }

    pub fn identity(o: Ordinal) -> Self {
        DegeneracyOp {
            src: o,
            dst: o,
            collapsed: Vec::new(),
        }
    }

    /// The unique surjection `[n] ->> [0]`.
    pub fn to_point(n: i32) -> Self {
        assert!(n >= 0, "no surjection from [{n}] onto [0]");
        DegeneracyOp {
            src: Ordinal(n),
            dst: Ordinal(0),
            collapsed: (0..n as usize).collect(),
        }
    }

    pub fn from_surjection(map: &MonotoneMap) -> Result<Self, OrdinalError> {
        if !map.is_surjective() {
            return Err(OrdinalError::NotSurjective(map.to_string()));
        }
        Ok(map.epi_mono_factor().0)
    }

    pub fn to_map(&self) -> MonotoneMap {
        let mut values = Vec::with_capacity(self.src.len());
        let mut current = 0usize;
        let mut next_collapse = self.collapsed.iter().peekable();
        for k in 0..self.src.len() {
            if k > 0 {
                if next_collapse.peek() == Some(&&(k - 1)) {
                    next_collapse.next();
                } else {
                    current += 1;
                }
            }
            values.push(current);
        }
        MonotoneMap::raw(self.src, self.dst, values)
    }

    pub fn src(&self) -> Ordinal {
        self.src
    }

    pub fn dst(&self) -> Ordinal {
        self.dst
    }

    pub fn collapsed(&self) -> &[usize] {
        &self.collapsed
    }

    pub fn is_identity(&self) -> bool {
        self.collapsed.is_empty()
    }

    /// `self ∘ inner` for two surjections.
    pub fn after(&self, inner: &DegeneracyOp) -> DegeneracyOp {
        let composite = self
            .to_map()
            .compose(&inner.to_map())
            .expect("degeneracy composition with mismatched ordinals");
        composite.epi_mono_factor().0
    }
}

impl fmt::Display for DegeneracyOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg {} {} :", self.src.n(), self.dst.n())?;
        for j in &self.collapsed {
            write!(f, " {j}")?;
        }
        Ok(())
    }
}

impl FromStr for DegeneracyOp {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (src, dst, rest) = parse_header(s, "deg")?;
        let collapsed = parse_numbers(s, &rest)?;
        let op = DegeneracyOp::new(Ordinal::new(src)?, collapsed)?;
        if op.dst.n() != dst {
            return Err(OrdinalError::Parse(s.to_string()));
        }
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: i32) -> Ordinal {
        Ordinal::new(n).unwrap()
    }

    fn map(src: i32, dst: i32, values: &[usize]) -> MonotoneMap {
        MonotoneMap::new(ord(src), ord(dst), values.to_vec()).unwrap()
    }

    fn maps_up_to(max: i32) -> Vec<MonotoneMap> {
        let mut out = Vec::new();
        for s in -1..=max {
            for d in -1..=max {
                out.extend(MonotoneMap::all(ord(s), ord(d)));
            }
        }
        out
    }

    #[test]
    fn ordinal_sum_objects() {
        assert_eq!(ordinal_sum_obj(ord(-1), ord(4)), ord(4));
        assert_eq!(ordinal_sum_obj(ord(4), ord(-1)), ord(4));
        assert_eq!(ordinal_sum_obj(ord(0), ord(0)), ord(1));
        assert_eq!(ordinal_sum_obj(ord(2), ord(3)), ord(6));
        assert!(Ordinal::new(-2).is_err());
    }

    #[test]
    fn ordinal_sum_of_maps() {
        let id = ordinal_sum_map(
            &MonotoneMap::identity(ord(2)),
            &MonotoneMap::identity(ord(1)),
        );
        assert_eq!(id, MonotoneMap::identity(ord(4)));

        let d0 = map(0, 1, &[1]);
        assert_eq!(
            ordinal_sum_map(&d0, &MonotoneMap::identity(ord(0))),
            map(1, 2, &[1, 2])
        );

        let empty = MonotoneMap::from_empty(ord(2));
        assert_eq!(
            ordinal_sum_map(&empty, &MonotoneMap::identity(ord(1))),
            map(1, 4, &[3, 4])
        );
    }

    #[test]
    fn composition() {
        let f = map(1, 2, &[0, 2]);
        assert_eq!(MonotoneMap::identity(ord(2)).compose(&f).unwrap(), f);

        let s0 = map(1, 0, &[0, 0]);
        let d0 = map(0, 1, &[1]);
        assert_eq!(s0.compose(&d0).unwrap(), MonotoneMap::identity(ord(0)));

        let d0_big = map(1, 2, &[1, 2]);
        assert_eq!(d0_big.compose(&d0).unwrap(), map(0, 2, &[2]));

        assert!(matches!(
            f.compose(&f),
            Err(OrdinalError::Composition { .. })
        ));
    }

    #[test]
    fn rejects_bad_maps() {
        assert!(MonotoneMap::new(ord(1), ord(2), vec![2, 1]).is_err());
        assert!(MonotoneMap::new(ord(1), ord(2), vec![0, 3]).is_err());
        assert!(MonotoneMap::new(ord(1), ord(2), vec![0]).is_err());
        // nothing maps into [-1] except [-1]
        assert!(MonotoneMap::all(ord(0), ord(-1)).is_empty());
        assert_eq!(MonotoneMap::all(ord(-1), ord(-1)).len(), 1);
        assert_eq!(MonotoneMap::all(ord(-1), ord(3)).len(), 1);
    }

    #[test]
    fn epi_mono_examples() {
        let inj = map(1, 3, &[0, 2]);
        let (e, m) = inj.epi_mono_factor();
        assert!(e.is_identity());
        assert_eq!(m, inj);

        let surj = map(3, 1, &[0, 0, 1, 1]);
        let (e, m) = surj.epi_mono_factor();
        assert_eq!(e.to_map(), surj);
        assert!(m.is_identity());

        let f = map(2, 2, &[0, 0, 2]);
        let (e, m) = f.epi_mono_factor();
        assert_eq!(e.collapsed(), &[0]);
        assert_eq!(e.dst(), ord(1));
        assert_eq!(m, map(1, 2, &[0, 2]));
    }

    #[test]
    fn epi_mono_factorization_is_unique() {
        // brute force over every (surjection, injection) pair through every middle ordinal
        for f in maps_up_to(3) {
            let mut found = Vec::new();
            for mid in -1..=3 {
                for e in MonotoneMap::all(f.src(), ord(mid))
                    .into_iter()
                    .filter(|e| e.is_surjective())
                {
                    for m in MonotoneMap::injections(ord(mid), f.dst()) {
                        if m.compose(&e).unwrap() == f {
                            found.push((e.clone(), m));
                        }
                    }
                }
            }
            assert_eq!(found.len(), 1, "{f}");
            let (e, m) = f.epi_mono_factor();
            assert_eq!(found[0], (e.to_map(), m));
        }
    }

    #[test]
    fn factoring_is_idempotent() {
        for f in maps_up_to(3) {
            let (e, m) = f.epi_mono_factor();
            let (e2, m2) = e.to_map().epi_mono_factor();
            assert_eq!(e2, e);
            assert!(m2.is_identity());
            let (e3, m3) = m.epi_mono_factor();
            assert!(e3.is_identity());
            assert_eq!(m3, m);
        }
    }

    #[test]
    fn ordinal_sum_is_functorial_and_associative() {
        let all = maps_up_to(2);
        let composable = |g: &MonotoneMap, f: &MonotoneMap| g.src() == f.dst();
        for f0 in &all {
            for g0 in all.iter().filter(|g| composable(g, f0)) {
                for f1 in &all {
                    for g1 in all.iter().filter(|g| composable(g, f1)) {
                        let lhs =
                            ordinal_sum_map(&g0.compose(f0).unwrap(), &g1.compose(f1).unwrap());
                        let rhs = ordinal_sum_map(g0, g1)
                            .compose(&ordinal_sum_map(f0, f1))
                            .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        for a in &all {
            for b in &all {
                for c in &all {
                    assert_eq!(
                        ordinal_sum_map(&ordinal_sum_map(a, b), c),
                        ordinal_sum_map(a, &ordinal_sum_map(b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn empty_ordinal_is_a_unit_on_arrows() {
        let unit = MonotoneMap::identity(Ordinal::EMPTY);
        for f in maps_up_to(3) {
            assert_eq!(ordinal_sum_map(&unit, &f), f);
            assert_eq!(ordinal_sum_map(&f, &unit), f);
        }
    }

    #[test]
    fn degeneracy_encoding_round_trips() {
        for n in -1..=6 {
            let surjections: Vec<_> = (-1..=n)
                .flat_map(|m| MonotoneMap::all(ord(n), ord(m)))
                .filter(MonotoneMap::is_surjective)
                .collect();
            // 2^n surjections out of [n] for n >= 0
            let expected = if n < 0 { 1 } else { 1usize << n };
            assert_eq!(surjections.len(), expected);
            for s in surjections {
                let op = DegeneracyOp::from_surjection(&s).unwrap();
                assert_eq!(op.to_map(), s);
                let rebuilt = DegeneracyOp::new(ord(n), op.collapsed().to_vec()).unwrap();
                assert_eq!(rebuilt, op);
            }
        }
    }

    #[test]
    fn simplicial_identity_on_cofaces() {
        // σ_j δ_i: spot check σ0 δ0 = σ0 δ1 = id
        let s0 = MonotoneMap::codegeneracy(1, 0);
        for i in 0..=1 {
            assert!(s0
                .compose(&MonotoneMap::coface(2, i))
                .unwrap()
                .is_identity());
        }
        assert_eq!(MonotoneMap::coface(2, 1), map(1, 2, &[0, 2]));
        assert_eq!(MonotoneMap::coface(0, 0), MonotoneMap::from_empty(ord(0)));
    }

    #[test]
    fn text_forms() {
        let f = map(2, 3, &[0, 0, 3]);
        assert_eq!(f.to_string(), "map 2 3 : 0 0 3");
        assert_eq!("map 2 3 : 0 0 3".parse::<MonotoneMap>().unwrap(), f);
        let e = MonotoneMap::from_empty(ord(2));
        assert_eq!(e.to_string(), "map -1 2 :");
        assert_eq!("map -1 2 :".parse::<MonotoneMap>().unwrap(), e);
        assert!("map 1 2 : 2 1".parse::<MonotoneMap>().is_err());

        let d = DegeneracyOp::new(ord(3), vec![0, 2]).unwrap();
        assert_eq!(d.to_string(), "deg 3 1 : 0 2");
        assert_eq!("deg 3 1 : 0 2".parse::<DegeneracyOp>().unwrap(), d);
        assert!("deg 3 2 : 0 2".parse::<DegeneracyOp>().is_err());
        assert!("deg 3 1 : 2 0".parse::<DegeneracyOp>().is_err());
    }
}
