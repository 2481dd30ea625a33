//! Finite permutation groups given by generators, with explicit element
//! lists and conjugacy classes.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Default cap on the group order.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Permutation of `{0, .., n-1}` as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u16>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u16).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Apply `self` first, then `o`.
    pub fn then(&self, o: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| o.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j as usize] = i as u16;
        }
        Perm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u16 == j)
    }

    /// `g^{-1} self g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().then(self).then(g)
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, num_integer::lcm)
    }

    /// Cycle lengths, including fixed points, in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Product of cycles in 1-based notation, e.g. `(1,2,3)(4,5)`.
    pub fn parse(s: &str, n: usize) -> Result<Perm> {
        let s = s.trim();
        let mut img: Vec<u16> = (0..n as u16).collect();
        if s.is_empty() || s == "()" || s == "e" {
            return Ok(Perm(img));
        }
        let mut rest = s;
        let mut result = Perm(img.clone());
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| Error::Permutation(format!("expected '(' in {s:?}")))?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::Permutation(format!("unexpected text in {s:?}")));
            }
            let close = rest.find(')').ok_or_else(|| Error::Permutation(format!("unclosed cycle in {s:?}")))?;
            let body = &rest[open + 1..close];
            let pts = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    let v: usize = t.parse().map_err(|_| Error::Permutation(format!("bad point {t:?}")))?;
                    if v == 0 || v > n {
                        return Err(Error::Permutation(format!("point {v} outside 1..{n}")));
                    }
                    Ok(v - 1)
                })
                .collect::<Result<Vec<_>>>()?;
            let mut uniq = pts.clone();
            uniq.sort_unstable();
            uniq.dedup();
            if uniq.len() != pts.len() {
                return Err(Error::Permutation(format!("repeated point in cycle ({body})")));
            }
            img = (0..n as u16).collect();
            for (k, &p) in pts.iter().enumerate() {
                img[p] = pts[(k + 1) % pts.len()] as u16;
            }
            // cycles written left to right are applied left to right
            result = result.then(&Perm(img.clone()));
            rest = &rest[close + 1..];
        }
        Ok(result)
    }

    /// 1-based cycle notation without fixed points.
    pub fn to_cycles(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for s in 0..n {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.0[i] as usize;
            }
            out.push_str(&format!("({})", cyc.join(",")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

/// A permutation group with its elements and conjugacy classes.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// Class number of each element.
    class_of: Vec<usize>,
    /// Elements of each class; the first is the representative.
    classes: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::with_cap(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Permutation(format!("generator {} has degree {}, expected {degree}", g.to_cycles(), g.degree())));
        }
        let generators: Vec<Perm> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let x = elements[i].then(g);
                if !index.contains_key(&x) {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge { order: elements.len() + 1, cap });
                    }
                    index.insert(x.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(x);
                }
            }
        }
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = vec![start];
            class_of[start] = c;
            let mut k = 0;
            while k < members.len() {
                let x = elements[members[k]].clone();
                for g in &generators {
                    let y = index[&x.conjugate_by(g)];
                    if class_of[y] == usize::MAX {
                        class_of[y] = c;
                        members.push(y);
                    }
                }
                k += 1;
            }
            classes.push(members);
        }
        Ok(FiniteGroup { degree, generators, elements, index, class_of, classes })
    }

    /// Generators in cycle notation separated by `;` (degree = largest point),
    /// or a name: `S_n`, `A_n`, `C_n`, `D_n` (dihedral on `n` points), `W_k`
    /// (the wreath product `μ_2 ≀ S_k` on `2k` points). Underscores are optional.
    pub fn parse(desc: &str) -> Result<Self> {
        let d = desc.trim();
        if d.contains('(') {
            let parts: Vec<&str> = d.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
            let n = d
                .split(|c: char| !c.is_ascii_digit())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {t:?}"))))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max()
                .unwrap_or(1);
            let gens = parts.iter().map(|p| Perm::parse(p, n)).collect::<Result<Vec<_>>>()?;
            return Self::new(n, gens);
        }
        let (name, num) = d.split_at(d.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::Parse(format!("unknown group {desc:?}")))?);
        let n: usize = num.parse().map_err(|_| Error::Parse(format!("unknown group {desc:?}")))?;
        match name.trim_end_matches('_') {
            "S" => Self::symmetric(n),
            "A" => Self::alternating(n),
            "C" => Self::cyclic(n),
            "D" => Self::dihedral(n),
            "W" => Self::wreath_mu2(n),
            _ => Err(Error::Parse(format!("unknown group {desc:?}"))),
        }
    }

    fn cycle(n: usize, pts: &[usize]) -> Perm {
        let mut v: Vec<u16> = (0..n as u16).collect();
        for (k, &p) in pts.iter().enumerate() {
            v[p] = pts[(k + 1) % pts.len()] as u16;
        }
        Perm(v)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("S_0".into()));
        }
        let mut gens = vec![];
        if n >= 2 {
            gens.push(Self::cycle(n, &[0, 1]));
            gens.push(Self::cycle(n, &(0..n).collect::<Vec<_>>()));
        }
        Self::new(n, gens)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("A_0".into()));
        }
        let gens = (2..n).map(|i| Self::cycle(n, &[0, 1, i])).collect();
        Self::new(n, gens)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("C_0".into()));
        }
        Self::new(n, vec![Self::cycle(n, &(0..n).collect::<Vec<_>>())])
    }

    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parse(format!("D_{n} needs n >= 3")));
        }
        let refl = Perm((0..n).map(|i| ((n - i) % n) as u16).collect());
        Self::new(n, vec![Self::cycle(n, &(0..n).collect::<Vec<_>>()), refl])
    }

    /// `μ_2 ≀ S_k` acting on `2k` points, the pairs being `{2i-1, 2i}`.
    pub fn wreath_mu2(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parse("W_0".into()));
        }
        let n = 2 * k;
        let mut gens = vec![Self::cycle(n, &[0, 1])];
        if k >= 2 {
            gens.push(Self::cycle(n, &[0, 2]).then(&Self::cycle(n, &[1, 3])));
            let evens: Vec<usize> = (0..k).map(|i| 2 * i).collect();
            let odds: Vec<usize> = (0..k).map(|i| 2 * i + 1).collect();
            gens.push(Self::cycle(n, &evens).then(&Self::cycle(n, &odds)));
        }
        Self::new(n, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element_index(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: &Perm) -> Option<usize> {
        self.element_index(g).map(|i| self.class_of[i])
    }

    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_members(&self, c: usize) -> impl Iterator<Item = &Perm> {
        self.classes[c].iter().map(|&i| &self.elements[i])
    }

    pub fn class_rep(&self, c: usize) -> &Perm {
        &self.elements[self.classes[c][0]]
    }

    /// `|C_G(g)|` for `g` in class `c`.
    pub fn centralizer_order(&self, c: usize) -> usize {
        self.order() / self.class_size(c)
    }

    /// Class containing the inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.class_of(&self.class_rep(c).inverse()).expect("closed under inverses")
    }

    pub fn exponent(&self) -> usize {
        (0..self.num_classes()).map(|c| self.class_rep(c).order()).fold(1, num_integer::lcm)
    }

    /// The subgroup generated by `gens`, which must lie in this group.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<FiniteGroup> {
        if let Some(g) = gens.iter().find(|g| g.degree() != self.degree || !self.contains(g)) {
            return Err(Error::NotASubgroup(format!("{} is not an element of the group", g.to_cycles())));
        }
        FiniteGroup::with_cap(self.degree, gens, self.order())
    }

    /// Every element of `h` lies in this group.
    pub fn is_subgroup(&self, h: &FiniteGroup) -> bool {
        h.degree == self.degree && h.elements.iter().all(|x| self.contains(x))
    }

    /// Pointwise stabilizer of the given 0-based points.
    pub fn stabilizer(&self, points: &[usize]) -> Result<FiniteGroup> {
        if let Some(&p) = points.iter().find(|&&p| p >= self.degree) {
            return Err(Error::Permutation(format!("point {} outside 1..{}", p + 1, self.degree)));
        }
        let gens: Vec<Perm> = self.elements.iter().filter(|g| points.iter().all(|&p| g.0[p] as usize == p)).cloned().collect();
        FiniteGroup::with_cap(self.degree, gens, self.order())
    }

    pub fn trivial_subgroup(&self) -> FiniteGroup {
        FiniteGroup::new(self.degree, vec![]).expect("trivial group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_orders() {
        let cases = [("S3", 6, 3), ("S4", 24, 5), ("S5", 120, 7), ("A4", 12, 4), ("A5", 60, 5), ("C4", 4, 4), ("D4", 8, 5), ("W2", 8, 5), ("W4", 384, 20)];
        for (name, order, classes) in cases {
            let g = FiniteGroup::parse(name).unwrap();
            assert_eq!((g.order(), g.num_classes()), (order, classes), "{name}");
        }
        assert_eq!(FiniteGroup::parse("S_3").unwrap().order(), 6);
    }

    #[test]
    fn cycle_notation() {
        let p = Perm::parse("(1,2,3)(4,5)", 5).unwrap();
        assert_eq!(p.to_cycles(), "(1,2,3)(4,5)");
        assert_eq!(p.order(), 6);
        assert_eq!(p.cycle_type(), vec![3, 2]);
        assert!(Perm::parse("(1,1)", 3).is_err());
        assert!(Perm::parse("(1,4)", 3).is_err());
        assert!(Perm::parse("(1,2", 3).is_err());
        let g = FiniteGroup::parse("(1,2,3);(1,2)").unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn class_sizes_add_up() {
        for name in ["S4", "A5", "W3", "D5"] {
            let g = FiniteGroup::parse(name).unwrap();
            let total: usize = (0..g.num_classes()).map(|c| g.class_size(c)).sum();
            assert_eq!(total, g.order());
            for c in 0..g.num_classes() {
                assert_eq!(g.order() % g.class_size(c), 0);
            }
        }
    }

    #[test]
    fn subgroups() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let h = g.stabilizer(&[3]).unwrap();
        assert_eq!(h.order(), 6);
        assert!(g.is_subgroup(&h));
        let a4 = FiniteGroup::alternating(4).unwrap();
        assert!(a4.subgroup(vec![Perm::parse("(1,2)", 4).unwrap()]).is_err());
        assert!(matches!(FiniteGroup::with_cap(6, FiniteGroup::symmetric(6).unwrap().generators().to_vec(), 100), Err(Error::GroupTooLarge { .. })));
    }
}
