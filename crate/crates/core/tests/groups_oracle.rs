mod common;

use common::{random_perm, seeded};
use nucifera_core::{parse_group_spec, GroupError, GroupTable};
use rand::Rng;

type Table = Vec<Vec<usize>>;

fn identity_of(t: &Table) -> Option<usize> {
    let n = t.len();
    (0..n).find(|&e| (0..n).all(|x| t[e][x] == x && t[x][e] == x))
}

fn associative(t: &Table) -> bool {
    let n = t.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}

fn check_witness(t: &Table, err: &GroupError) {
    match *err {
        GroupError::NotAssociative {
            a,
            b,
            c,
            left,
            right,
        } => {
            assert_eq!(t[t[a][b]][c], left);
            assert_eq!(t[a][t[b][c]], right);
            assert_ne!(left, right);
        }
        ref other => panic!("expected an associativity witness, got {other}"),
    }
}

/// Every Latin square of order `n` whose first row and column are `0..n`.
fn reduced_latin_squares(n: usize) -> Vec<Table> {
    fn fill(t: &mut Table, cell: usize, out: &mut Vec<Table>) {
        let n = t.len();
        if cell == n * n {
            out.push(t.clone());
            return;
        }
        let (r, c) = (cell / n, cell % n);
        if r == 0 || c == 0 {
            t[r][c] = r.max(c);
            return fill(t, cell + 1, out);
        }
        for v in 0..n {
            if (0..c).all(|j| t[r][j] != v) && (0..r).all(|i| t[i][c] != v) {
                t[r][c] = v;
                fill(t, cell + 1, out);
            }
        }
    }
    let mut out = Vec::new();
    fill(&mut vec![vec![0; n]; n], 0, &mut out);
    out
}

#[test]
fn order_five_loops_against_exhaustive_triple_check() {
    let squares = reduced_latin_squares(5);
    assert_eq!(squares.len(), 56);
    let mut groups = 0;
    for t in &squares {
        match GroupTable::validate_table(t) {
            Ok(g) => {
                assert!(associative(t));
                assert_eq!(g.order_profile(), vec![1, 5, 5, 5, 5]);
                groups += 1;
            }
            Err(e) => {
                assert!(!associative(t));
                check_witness(t, &e);
            }
        }
    }
    // The labelled copies of C5 with identity 0: 4!/|Aut(C5)| = 6.
    assert_eq!(groups, 6);
}

/// `(σ, τ, ρ)`-isotope: `T'[σa][τb] = ρ(T[a][b])`.
fn isotope(t: &Table, s: &[usize], u: &[usize], r: &[usize]) -> Table {
    let n = t.len();
    let mut out = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            out[s[a]][u[b]] = r[t[a][b]];
        }
    }
    out
}

#[test]
fn random_isotopes_are_classified_like_the_oracle() {
    let mut rng = seeded(0x150);
    // A loop isotopic to a group is a group, so the non-associative cases
    // come from isotopes of the order-5 loops.
    let mut bases: Vec<Table> = ["C(5)", "C(6)", "D(6)", "C(2) x C(4)", "D(8)", "A(4)"]
        .iter()
        .map(|s| parse_group_spec(s).unwrap().to_rows())
        .collect();
    bases.extend(
        reduced_latin_squares(5)
            .into_iter()
            .filter(|t| !associative(t))
            .take(10),
    );
    let (mut ok, mut no_id, mut non_assoc) = (0, 0, 0);
    for t in &bases {
        let n = t.len();
        let profile =
            associative(t).then(|| GroupTable::validate_table(t).unwrap().order_profile());
        for _ in 0..200 {
            let s = random_perm(&mut rng, n);
            let (u, r) = if rng.gen_bool(0.5) {
                // A plain relabeling keeps the identity.
                (s.clone(), s.clone())
            } else {
                (random_perm(&mut rng, n), random_perm(&mut rng, n))
            };
            let iso = isotope(t, &s, &u, &r);
            match (identity_of(&iso), GroupTable::validate_table(&iso)) {
                (None, Err(GroupError::NoIdentity)) => no_id += 1,
                (Some(_), Ok(h)) => {
                    assert!(associative(&iso));
                    // Isotopic groups are isomorphic.
                    assert_eq!(Some(h.order_profile()), profile);
                    ok += 1;
                }
                (Some(_), Err(e)) => {
                    assert!(!associative(&iso));
                    check_witness(&iso, &e);
                    non_assoc += 1;
                }
                (id, res) => panic!("oracle identity {id:?}, validator {res:?}"),
            }
        }
    }
    assert!(
        ok > 0 && no_id > 0 && non_assoc > 0,
        "{ok} {no_id} {non_assoc}"
    );
}

#[test]
fn corrupted_c3_reports_the_latin_row() {
    let mut t = parse_group_spec("C(3)").unwrap().to_rows();
    assert!(GroupTable::validate_table(&t).is_ok());
    t[1][1] = 1;
    assert!(matches!(
        GroupTable::validate_table(&t),
        Err(GroupError::LatinRow { row: 1, .. })
    ));
}

/// Involutions and inverse pairs counted straight from the table.
fn count_by_enumeration(g: &GroupTable) -> (usize, usize) {
    let t = g.to_rows();
    let n = t.len();
    let e = identity_of(&t).unwrap();
    let square_is_e = |x: usize| t[x][x] == e;
    let involutions = (0..n).filter(|&x| x != e && square_is_e(x)).count();
    (involutions, (n - 1 - involutions) / 2)
}

#[test]
fn partitions_match_element_enumeration() {
    let cases = [
        ("C(30)", 1, 14),
        ("D(30)", 15, 7),
        ("D(28)", 15, 6),
        ("S(4)", 9, 7),
        ("A(4)", 3, 4),
        ("A(4) x C(2)", 7, 8),
        ("D(10) x C(3)", 5, 12),
        ("D(12) x C(2)", 15, 4),
        ("S(3) x C(4)", 7, 8),
        ("D(24)", 13, 5),
        ("D(6) x C(5)", 3, 13),
    ];
    for (spec, inv, pairs) in cases {
        let g = parse_group_spec(spec).unwrap();
        assert_eq!(count_by_enumeration(&g), (inv, pairs), "{spec}");
        let p = g.involution_pair_partition();
        assert_eq!((p.involutions.len(), p.pairs.len()), (inv, pairs), "{spec}");
        let mut covered: Vec<usize> = p.involutions.clone();
        for &(x, y) in &p.pairs {
            assert_eq!(g.inv(x), y);
            covered.extend([x, y]);
        }
        covered.sort_unstable();
        assert_eq!(covered, (1..g.order()).collect::<Vec<_>>(), "{spec}");
        assert_eq!(p.subset_count(), 1 << (inv + pairs));
    }
}

#[test]
fn product_order_does_not_change_the_order_profile() {
    let a = parse_group_spec("A(4) x C(2)").unwrap();
    let b = parse_group_spec("C(2) x A(4)").unwrap();
    let mut pa = a.order_profile();
    let mut pb = b.order_profile();
    pa.sort_unstable();
    pb.sort_unstable();
    assert_eq!(pa, pb);
}
