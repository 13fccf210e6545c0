use crate::error::{Error, Result};

/// A finite group given by its multiplication table, identity at index 0 not
/// required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validate a multiplication table `table[g][h] = g·h`.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        let bad = |msg: String| Error::InvalidGroup(format!("{name}: {msg}"));
        if n == 0 {
            return Err(bad("empty table".into()));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(bad(format!("row {g} has length {}", row.len())));
            }
            if let Some(&h) = row.iter().find(|&&h| h >= n) {
                return Err(bad(format!("entry {h} out of range in row {g}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| bad("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| bad(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad(format!("associativity fails on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.to_string(), table, identity, inverse })
    }

    /// The cyclic group ℤ_n.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
        FiniteGroup::from_table(&format!("Z{n}"), table).expect("cyclic table")
    }

    /// ℤ₂ × ℤ₂ with elements encoded as two bits.
    pub fn klein() -> Self {
        let table = (0..4).map(|g| (0..4).map(|h| g ^ h).collect()).collect();
        FiniteGroup::from_table("Z2xZ2", table).expect("klein table")
    }

    /// The symmetric group S₃, elements listed as permutations of {0,1,2} in
    /// lexicographic order (identity first).
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    // (p·q)(k) = p(q(k))
                    .map(|q| index([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table("S3", table).expect("S3 table")
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let m = other.order();
        let n = self.order() * m;
        let table = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| self.mul(g / m, h / m) * m + other.mul(g % m, h % m))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&format!("{}x{}", self.name, other.name), table).expect("product table")
    }

    /// Look up a bundled group by name: `z<n>`, `z2xz2`, `s3`.
    pub fn by_name(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "s3" => Ok(FiniteGroup::symmetric3()),
            "z2xz2" | "klein" => Ok(FiniteGroup::klein()),
            _ => {
                let n: usize = lower
                    .strip_prefix('z')
                    .and_then(|s| s.parse().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| Error::InvalidGroup(format!("unknown group {name}")))?;
                Ok(FiniteGroup::cyclic(n))
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|g| (0..n).all(|h| self.table[g][h] == self.table[h][g]))
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|h| self.mul(self.mul(h, g), self.inv(h))).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Whether a permutation of elements is a group automorphism.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.order();
        perm.len() == n
            && (0..n).all(|g| (0..n).all(|h| perm[self.mul(g, h)] == self.mul(perm[g], perm[h])))
    }
}
