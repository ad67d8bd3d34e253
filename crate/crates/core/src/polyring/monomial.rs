use std::cmp::Ordering;

/// A monomial as a sorted list of `(variable index, exponent)` pairs with
/// strictly positive exponents. The empty list is the constant monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        Monomial(vec![(index as u32, 1)])
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged and
    /// zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut v: Vec<(u32, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).map(|(i, e)| (i as u32, e)).collect();
        v.sort_unstable();
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (i, e) in v {
            match out.last_mut() {
                Some((j, f)) if *j == i => *f += e,
                _ => out.push((i, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(i, e)| (i as usize, e))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.binary_search_by_key(&(var as u32), |&(i, _)| i).map_or(0, |k| self.0[k].1)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(i, _)| i as usize)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Lowers the exponent of `var` by one, returning the old exponent, or `None`
    /// if `var` does not occur.
    pub fn divide_by_var(&self, var: usize) -> Option<(u32, Monomial)> {
        let k = self.0.binary_search_by_key(&(var as u32), |&(i, _)| i).ok()?;
        let mut v = self.0.clone();
        let e = v[k].1;
        if e == 1 {
            v.remove(k);
        } else {
            v[k].1 -= 1;
        }
        Some((e, Monomial(v)))
    }

    /// Graded lexicographic comparison where variables are ranked by `rank[var]`
    /// (lower rank = more significant).
    pub fn cmp_grlex_by(&self, other: &Monomial, rank: &[usize]) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let key = |m: &Monomial| {
                let mut v: Vec<(usize, u32)> = m.pairs().map(|(i, e)| (rank[i], e)).collect();
                v.sort_unstable();
                v
            };
            lex_exponents(&key(self), &key(other))
        })
    }
}

/// Lex comparison of sparse exponent vectors sorted by variable: the first variable
/// where the exponents differ decides, and a larger exponent is larger.
fn lex_exponents<V: Ord + Copy>(a: &[(V, u32)], b: &[(V, u32)]) -> Ordering {
    let mut i = 0;
    loop {
        match (a.get(i), b.get(i)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                // a has a smaller (more significant) variable that b lacks
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match ea.cmp(&eb) {
                    Ordering::Equal => i += 1,
                    o => return o,
                },
            },
        }
    }
}

/// Graded lex over variable indices.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| lex_exponents(&self.0, &other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
