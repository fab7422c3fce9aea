//! Finite groups given by multiplication tables, and a catalogue of all
//! groups of order at most 16 up to isomorphism.

use std::collections::VecDeque;

/// A finite group on `0..order` with identity `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a multiplication table, checking the axioms.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Option<FiniteGroup> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return None;
        }
        if (0..n).any(|g| table[0][g] != g || table[g][0] != g) {
            return None;
        }
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n).find(|&h| table[g][h] == 0)?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return None;
                    }
                }
            }
        }
        Some(FiniteGroup { name: name.to_string(), table, inverse })
    }

    fn from_elements<T: Clone + PartialEq>(name: &str, elems: Vec<T>, mul: impl Fn(&T, &T) -> T) -> FiniteGroup {
        let index = |x: &T| elems.iter().position(|y| y == x).expect("closed");
        let table = elems.iter().map(|a| elems.iter().map(|b| index(&mul(a, b))).collect()).collect();
        FiniteGroup::from_table(name, table).expect("valid group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.table[a][b] == self.table[b][a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.commute(a, b)))
    }

    /// A small generating set, chosen greedily.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order()];
        span[0] = true;
        while span.iter().any(|&s| !s) {
            let g = (0..self.order())
                .filter(|&g| !span[g])
                .max_by_key(|&g| self.element_order(g))
                .expect("element outside the span");
            gens.push(g);
            span = self.closure(&gens);
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.table[x][g];
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// All homomorphisms to `Z/n`, as value tables.
    pub fn homomorphisms_to_cyclic(&self, n: usize) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let total = n.pow(gens.len() as u32);
        'images: for code in 0..total {
            let imgs: Vec<usize> = (0..gens.len()).map(|i| (code / n.pow(i as u32)) % n).collect();
            let mut val: Vec<Option<usize>> = vec![None; self.order()];
            val[0] = Some(0);
            let mut queue = VecDeque::from([0]);
            while let Some(x) = queue.pop_front() {
                for (gi, &g) in gens.iter().enumerate() {
                    let y = self.table[x][g];
                    let v = (val[x].expect("visited") + imgs[gi]) % n;
                    match val[y] {
                        None => {
                            val[y] = Some(v);
                            queue.push_back(y);
                        }
                        Some(w) if w != v => continue 'images,
                        Some(_) => {}
                    }
                }
            }
            let hom: Vec<usize> = val.into_iter().map(|v| v.expect("generated")).collect();
            if (0..self.order()).all(|a| (0..self.order()).all(|b| hom[self.table[a][b]] == (hom[a] + hom[b]) % n)) {
                out.push(hom);
            }
        }
        out
    }
}

pub fn cyclic(n: usize) -> FiniteGroup {
    FiniteGroup::from_elements(&format!("C{n}"), (0..n).collect(), |a, b| (a + b) % n)
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let elems: Vec<(usize, usize)> = (0..g.order()).flat_map(|a| (0..h.order()).map(move |b| (a, b))).collect();
    FiniteGroup::from_elements(&format!("{}x{}", g.name, h.name), elems, |x, y| (g.mul(x.0, y.0), h.mul(x.1, y.1)))
}

/// `N x| H` where `action[h]` is the automorphism of `N` (as a permutation)
/// by which `h` acts.
pub fn semidirect(name: &str, n: &FiniteGroup, h: &FiniteGroup, action: &[Vec<usize>]) -> FiniteGroup {
    let elems: Vec<(usize, usize)> = (0..n.order()).flat_map(|a| (0..h.order()).map(move |b| (a, b))).collect();
    FiniteGroup::from_elements(name, elems, |x, y| (n.mul(x.0, action[x.1][y.0]), h.mul(x.1, y.1)))
}

/// `C_n x| C_k` with the generator of `C_k` acting by `x -> r x`.
fn metacyclic(name: &str, n: usize, k: usize, r: usize) -> FiniteGroup {
    let action: Vec<Vec<usize>> =
        (0..k).map(|j| (0..n).map(|x| x * r.pow(j as u32) % n).collect()).collect();
    semidirect(name, &cyclic(n), &cyclic(k), &action)
}

pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(&format!("D{n}"), n, 2, n - 1)
}

/// Dicyclic group of order `4n`: `<a, x | a^{2n}, x^2 = a^n, x a x^{-1} = a^{-1}>`.
pub fn dicyclic(n: usize) -> FiniteGroup {
    let m = 2 * n;
    let elems: Vec<(usize, usize)> = (0..m).flat_map(|k| (0..2).map(move |e| (k, e))).collect();
    let name = if n == 2 { "Q8".to_string() } else { format!("Dic{n}") };
    FiniteGroup::from_elements(&name, elems, |&(k, e), &(l, f)| {
        if e == 0 {
            ((k + l) % m, f)
        } else if f == 0 {
            ((k + m - l) % m, 1)
        } else {
            ((k + m - l + n) % m, 0)
        }
    })
}

/// `(C4 x C2) x| C2` with the given action on generators `a` (order 4) and
/// `b` (order 2), encoded as images `(i, j)` meaning `a^i b^j`.
fn c4c2_by_c2(name: &str, a_img: (usize, usize), b_img: (usize, usize)) -> FiniteGroup {
    let n = direct_product(&cyclic(4), &cyclic(2));
    // elements of n are indexed i * 2 + j for a^i b^j
    let phi: Vec<usize> = (0..8)
        .map(|x| {
            let (i, j) = (x / 2, x % 2);
            let ii = (a_img.0 * i + b_img.0 * j) % 4;
            let jj = (a_img.1 * i + b_img.1 * j) % 2;
            ii * 2 + jj
        })
        .collect();
    semidirect(name, &n, &cyclic(2), &[(0..8).collect(), phi])
}

/// One representative of every isomorphism class of groups of order at
/// most 16 (42 groups).
pub fn small_groups() -> Vec<FiniteGroup> {
    let c = cyclic;
    let dp = |a: &FiniteGroup, b: &FiniteGroup| direct_product(a, b);
    let c2 = c(2);
    let mut out = vec![c(1), c2.clone(), c(3), c(4), dp(&c2, &c2), c(5), c(6), dihedral(3), c(7)];
    out.extend([c(8), dp(&c(4), &c2), dp(&dp(&c2, &c2), &c2), dihedral(4), dicyclic(2)]);
    out.extend([c(9), dp(&c(3), &c(3)), c(10), dihedral(5), c(11)]);
    let klein = dp(&c2, &c2);
    // C3 permuting the three involutions of the Klein group cyclically
    let rot = vec![0, 3, 1, 2];
    let rot2: Vec<usize> = (0..4).map(|x| rot[rot[x]]).collect();
    let a4 = semidirect("A4", &klein, &c(3), &[(0..4).collect(), rot, rot2]);
    out.extend([c(12), dp(&c2, &c(6)), a4, dicyclic(3), dihedral(6), c(13), c(14), dihedral(7), c(15)]);
    out.extend([
        c(16),
        dp(&c(4), &c(4)),
        dp(&c2, &c(8)),
        dp(&dp(&c2, &c2), &c(4)),
        dp(&dp(&c2, &c2), &dp(&c2, &c2)),
        dihedral(8),
        metacyclic("SD16", 8, 2, 3),
        metacyclic("M16", 8, 2, 5),
        dicyclic(4),
        metacyclic("C4:C4", 4, 4, 3),
        dp(&c2, &dihedral(4)),
        dp(&c2, &dicyclic(2)),
        c4c2_by_c2("(C4xC2):C2", (1, 1), (0, 1)),
        c4c2_by_c2("Pauli", (1, 0), (2, 1)),
    ]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signature(g: &FiniteGroup) -> (usize, Vec<usize>, usize, usize) {
        let mut orders: Vec<usize> = (0..g.order()).map(|a| g.element_order(a)).collect();
        orders.sort();
        let center = (0..g.order()).filter(|&a| (0..g.order()).all(|b| g.commute(a, b))).count();
        let commuting = (0..g.order()).flat_map(|a| (0..g.order()).map(move |b| (a, b))).filter(|&(a, b)| g.commute(a, b)).count();
        (g.order(), orders, center, commuting)
    }

    /// Backtracking isomorphism search along a generating set of `g`.
    fn isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
        if signature(g) != signature(h) {
            return false;
        }
        let gens = g.generators();
        fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], imgs: &mut Vec<usize>) -> bool {
            if imgs.len() == gens.len() {
                // build the map by BFS and check it is a bijective homomorphism
                let mut map = vec![usize::MAX; g.order()];
                map[0] = 0;
                let mut queue = VecDeque::from([0]);
                while let Some(x) = queue.pop_front() {
                    for (i, &s) in gens.iter().enumerate() {
                        let y = g.mul(x, s);
                        let v = h.mul(map[x], imgs[i]);
                        if map[y] == usize::MAX {
                            map[y] = v;
                            queue.push_back(y);
                        } else if map[y] != v {
                            return false;
                        }
                    }
                }
                let mut seen = vec![false; h.order()];
                for &v in &map {
                    if seen[v] {
                        return false;
                    }
                    seen[v] = true;
                }
                return (0..g.order()).all(|a| (0..g.order()).all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])));
            }
            let want = g.element_order(gens[imgs.len()]);
            for cand in 0..h.order() {
                if h.element_order(cand) == want {
                    imgs.push(cand);
                    if extend(g, h, gens, imgs) {
                        return true;
                    }
                    imgs.pop();
                }
            }
            false
        }
        extend(g, h, &gens, &mut Vec::new())
    }

    #[test]
    fn catalogue_has_forty_two_distinct_groups() {
        let groups = small_groups();
        assert_eq!(groups.len(), 42);
        let mut counts = [0usize; 17];
        for g in &groups {
            counts[g.order()] += 1;
        }
        assert_eq!(counts[1..], [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]);
        for i in 0..groups.len() {
            for j in 0..i {
                assert!(!isomorphic(&groups[i], &groups[j]), "{} ~ {}", groups[i].name(), groups[j].name());
            }
        }
    }

    #[test]
    fn isomorphism_search_finds_relabellings() {
        assert!(isomorphic(&dp(&cyclic(2), &cyclic(3)), &cyclic(6)));
        assert!(isomorphic(&dihedral(3), &metacyclic("S3", 3, 2, 2)));
    }

    fn dp(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        direct_product(a, b)
    }

    #[test]
    fn homomorphisms_of_klein_group() {
        let k = dp(&cyclic(2), &cyclic(2));
        assert_eq!(k.homomorphisms_to_cyclic(2).len(), 4);
        assert_eq!(cyclic(6).homomorphisms_to_cyclic(4).len(), 2);
        assert_eq!(dicyclic(2).homomorphisms_to_cyclic(2).len(), 4);
    }
}
