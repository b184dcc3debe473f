use super::{FiniteGroup, GroupError, Subset};
use crate::limits::DEFAULT_MAX_ORDER;

fn guard(order: usize) -> Result<(), GroupError> {
    if order > DEFAULT_MAX_ORDER {
        return Err(GroupError::TooLarge { order, limit: DEFAULT_MAX_ORDER });
    }
    Ok(())
}

fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup, GroupError> {
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            table.push(f(i, j));
        }
    }
    FiniteGroup::from_flat(table, n)
}

/// `Z_n` with `i * j = (i + j) mod n`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidArgument("cyclic group of order 0".into()));
    }
    guard(n)?;
    Ok(from_fn(n, |i, j| (i + j) % n)?.with_name(format!("Z{n}")))
}

/// Direct product of cyclic groups in the given order. Element indices are
/// mixed-radix with the last factor varying fastest.
pub fn make_abelian(factors: &[usize]) -> Result<FiniteGroup, GroupError> {
    if let Some(&bad) = factors.iter().find(|&&m| m < 2) {
        return Err(GroupError::InvalidArgument(format!("cyclic factor {bad} < 2")));
    }
    match factors {
        [] => make_cyclic(1),
        [m] => make_cyclic(*m),
        _ => {
            let order = factors
                .iter()
                .try_fold(1usize, |acc, &m| acc.checked_mul(m))
                .filter(|&o| o <= DEFAULT_MAX_ORDER)
                .ok_or(GroupError::TooLarge { order: usize::MAX, limit: DEFAULT_MAX_ORDER })?;
            let digits = |mut x: usize| {
                let mut d = vec![0; factors.len()];
                for (k, &m) in factors.iter().enumerate().rev() {
                    d[k] = x % m;
                    x /= m;
                }
                d
            };
            let undigits = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&x, &m)| acc * m + x);
            let g = from_fn(order, |i, j| {
                let (a, b) = (digits(i), digits(j));
                let sum: Vec<usize> =
                    a.iter().zip(&b).zip(factors).map(|((x, y), m)| (x + y) % m).collect();
                undigits(&sum)
            })?;
            let names = (0..order)
                .map(|i| {
                    let d: Vec<String> = digits(i).iter().map(|x| x.to_string()).collect();
                    format!("({})", d.join(","))
                })
                .collect();
            let name = factors.iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("x");
            Ok(g.with_name(name).with_element_names(names)?)
        }
    }
}

/// The dihedral group of order `2n`: symmetries of a regular `n`-gon.
/// Element `a + n*b` is `r^a f^b`.
pub fn make_dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidArgument("dihedral group needs n >= 1".into()));
    }
    guard(2 * n)?;
    // r^a f^b * r^c f^d = r^(a + (-1)^b c) f^(b + d)
    let g = from_fn(2 * n, |i, j| {
        let (a, b) = (i % n, i / n);
        let (c, d) = (j % n, j / n);
        let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
        rot + n * ((b + d) % 2)
    })?;
    let names = (0..2 * n)
        .map(|i| {
            let (a, b) = (i % n, i / n);
            let r = match a {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{a}"),
            };
            match (r.is_empty(), b) {
                (true, 0) => "1".to_string(),
                (true, _) => "f".to_string(),
                (false, 0) => r,
                (false, _) => format!("{r}f"),
            }
        })
        .collect();
    g.with_name(format!("D{}", 2 * n)).with_element_names(names)
}

/// The dicyclic group of order `4k`, `<a, x | a^(2k) = 1, x^2 = a^k, x a x^-1 = a^-1>`.
/// Element `i + 2k*b` is `a^i x^b`.
pub fn make_dicyclic(k: usize) -> Result<FiniteGroup, GroupError> {
    if k < 2 {
        return Err(GroupError::InvalidArgument("dicyclic group needs k >= 2".into()));
    }
    guard(4 * k)?;
    let m = 2 * k;
    let g = from_fn(4 * k, |p, q| {
        let (i, b) = (p % m, p / m);
        let (j, d) = (q % m, q / m);
        match (b, d) {
            (0, _) => (i + j) % m + m * d,
            (_, 0) => (i + m - j) % m + m,
            _ => (i + m - j + k) % m,
        }
    })?;
    let names = (0..4 * k)
        .map(|p| {
            let (i, b) = (p % m, p / m);
            match (i, b) {
                (0, 0) => "1".to_string(),
                (0, _) => "x".to_string(),
                (1, 0) => "a".to_string(),
                (1, _) => "ax".to_string(),
                (_, 0) => format!("a^{i}"),
                _ => format!("a^{i}x"),
            }
        })
        .collect();
    let name = if k == 2 { "Q8".to_string() } else { format!("Dic{k}") };
    g.with_name(name).with_element_names(names)
}

/// The quaternion group `{±1, ±i, ±j, ±k}`.
pub fn make_quaternion() -> Result<FiniteGroup, GroupError> {
    let names = ["1", "i", "-1", "-i", "j", "k", "-j", "-k"];
    make_dicyclic(2)?.with_element_names(names.iter().map(|s| s.to_string()).collect())
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        let parts: Vec<String> = cycle.iter().map(|c| (c + 1).to_string()).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

/// The symmetric group on `k <= 4` points. Permutations are listed in
/// lexicographic order (identity first) and composed as `(p q)(x) = p(q(x))`.
pub fn make_symmetric(k: usize) -> Result<FiniteGroup, GroupError> {
    if k == 0 || k > 4 {
        return Err(GroupError::InvalidArgument(format!("symmetric group S{k} outside 1..=4")));
    }
    let perms = permutations(k);
    let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
    let g = from_fn(perms.len(), |i, j| {
        let composed: Vec<usize> = (0..k).map(|x| perms[i][perms[j][x]]).collect();
        index(&composed)
    })?;
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    g.with_name(format!("S{k}")).with_element_names(names)
}

/// The alternating group `A4` as the even permutations of `S4`.
pub fn make_alternating4() -> Result<FiniteGroup, GroupError> {
    let s4 = make_symmetric(4)?;
    let perms = permutations(4);
    let even = |p: &[usize]| {
        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)));
        inversions.filter(|&(i, j)| p[i] > p[j]).count() % 2 == 0
    };
    let members = Subset::new(24, (0..24).filter(|&i| even(&perms[i])))?;
    Ok(s4.restrict(&members)?.with_name("A4"))
}

/// `G x H` with componentwise multiplication; `(a, b)` has index `a * |H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let (n, m) = (g.order(), h.order());
    guard(n * m)?;
    let p = from_fn(n * m, |i, j| {
        let a = g.mul(i / m, j / m);
        let b = h.mul(i % m, j % m);
        a * m + b
    })?;
    let strip = |s: &str| -> String {
        if s.starts_with('(') && s.ends_with(')') && !s[1..s.len() - 1].contains(['(', ')']) {
            s[1..s.len() - 1].to_string()
        } else {
            s.to_string()
        }
    };
    let names = (0..n * m)
        .map(|i| format!("({},{})", strip(g.element_name(i / m)), strip(h.element_name(i % m))))
        .collect();
    p.with_name(format!("{}x{}", g.name(), h.name())).with_element_names(names)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_of_order(g: &FiniteGroup, k: usize) -> usize {
        g.elements().filter(|&x| g.element_order(x) == k).count()
    }

    // Independent oracle: order of an element computed from scratch by repeated multiplication.
    fn order_by_repetition(g: &FiniteGroup, x: usize) -> usize {
        let rows = g.rows();
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = rows[y][x];
            k += 1;
        }
        k
    }

    #[test]
    fn cyclic_basics() {
        assert_eq!(make_cyclic(1).unwrap().order(), 1);
        let z4 = make_cyclic(4).unwrap();
        assert_eq!(z4.mul(2, 3), 1);
        let z6 = make_cyclic(6).unwrap();
        assert_eq!(order_by_repetition(&z6, 1), 6);
        assert_eq!(z6.element_order(1), 6);
        assert_eq!(z6.element_order(2), 3);
        assert_eq!(z6.element_order(0), 1);
        assert!(make_cyclic(0).is_err());
    }

    #[test]
    fn klein_four_has_three_involutions() {
        let v = make_abelian(&[2, 2]).unwrap();
        assert_eq!(v.order(), 4);
        assert_eq!(count_of_order(&v, 2), 3);
        assert!(!v.is_cyclic());
    }

    #[test]
    fn z2_times_z4() {
        let a = make_abelian(&[2, 4]).unwrap();
        assert_eq!(a.order(), 8);
        assert_eq!(a.name(), "Z2xZ4");
        assert_eq!(count_of_order(&a, 4), 4);
        assert_eq!(a.element_name(5), "(1,1)");
    }

    #[test]
    fn single_factor_is_cyclic() {
        let a = make_abelian(&[6]).unwrap();
        assert!(a.is_cyclic());
        assert_eq!(a.rows(), make_cyclic(6).unwrap().rows());
        assert_eq!(make_abelian(&[]).unwrap().order(), 1);
        assert!(make_abelian(&[1, 3]).is_err());
    }

    #[test]
    fn dihedral_of_order_eight() {
        let d8 = make_dihedral(4).unwrap();
        assert_eq!(d8.order(), 8);
        assert_eq!(count_of_order(&d8, 4), 2);
        assert_eq!(count_of_order(&d8, 2), 5);
        assert!(!d8.is_cyclic());
        assert!(!d8.is_abelian());
        assert_eq!(d8.element_name(5), "rf");
        assert_eq!(d8.center().len(), 2);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q8 = make_quaternion().unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(count_of_order(&q8, 2), 1);
        assert_eq!(count_of_order(&q8, 4), 6);
        let (i, j, k) = (1, 4, 5);
        assert_eq!(q8.mul(i, j), k);
        assert_eq!(q8.mul(j, i), 7);
    }

    #[test]
    fn symmetric_groups() {
        let s3 = make_symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        // commutator oracle: some pair fails to commute
        let rows = s3.rows();
        assert!((0..6).any(|a| (0..6).any(|b| rows[a][b] != rows[b][a])));
        assert_eq!(make_symmetric(4).unwrap().order(), 24);
        assert!(make_symmetric(5).is_err());
        assert_eq!(s3.element_name(0), "()");
    }

    #[test]
    fn alternating_four() {
        let a4 = make_alternating4().unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(count_of_order(&a4, 3), 8);
        assert_eq!(count_of_order(&a4, 2), 3);
        assert_eq!(a4.center().len(), 1);
    }

    #[test]
    fn dicyclic_three() {
        let dic3 = make_dicyclic(3).unwrap();
        assert_eq!(dic3.order(), 12);
        assert_eq!(count_of_order(&dic3, 4), 6);
        assert_eq!(count_of_order(&dic3, 2), 1);
    }

    #[test]
    fn products() {
        let z2 = make_cyclic(2).unwrap();
        let z3 = make_cyclic(3).unwrap();
        assert!(direct_product(&z2, &z3).unwrap().is_cyclic());
        assert!(!direct_product(&z2, &z2).unwrap().is_cyclic());
        let d8 = make_dihedral(4).unwrap();
        let t = make_cyclic(1).unwrap();
        assert_eq!(direct_product(&d8, &t).unwrap().rows(), d8.rows());
        let p = direct_product(&make_abelian(&[2, 2]).unwrap(), &z3).unwrap();
        assert_eq!(p.element_name(5), "(0,1,2)");
    }

    #[test]
    fn centralizers_and_generated_subgroups() {
        let z6 = make_cyclic(6).unwrap();
        let s = Subset::new(6, [2]).unwrap();
        assert_eq!(z6.subgroup_generated(&s).as_slice(), &[0, 2, 4]);
        assert_eq!(z6.center(), Subset::full(6));
        let d8 = make_dihedral(4).unwrap();
        let f = Subset::new(8, [4]).unwrap();
        let c = d8.centralizer(&f);
        assert_eq!(c.as_slice(), &[0, 2, 4, 6]);
        assert!(d8.is_subgroup(&c));
    }
}
