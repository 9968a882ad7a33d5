//! Acceptance gate: one pass/fail line per criterion.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cartanlift::abelian::AbelianGroup;
use cartanlift::braiding::{
    detect_cartan, fl_symmetrizers, twist_braiding, BraidingMatrix, CartanTypeResult,
};
use cartanlift::exactfield::{gcd, RootOfUnity};
use cartanlift::freealg::{lifted_relations, root_vectors, truncated_quotient_dim};
use cartanlift::linking::{
    check_hypotheses, enumerate_data, linkable, linkable_pairs, validate_datum, Datum,
    LinkingDatum,
};
use cartanlift::nichols::{
    nichols_dims, pbw_hilbert_series, serre_element, vanishes_in_nichols, TensorElem,
};
use cartanlift::rootsys::{CartanMatrix, RootSystemData};

const BUDGET: u64 = 1 << 16;

fn gate(n: u32, name: &str, f: impl FnOnce()) {
    let result = catch_unwind(AssertUnwindSafe(f));
    match &result {
        Ok(()) => println!("criterion {n} ({name}): PASS"),
        Err(_) => println!("criterion {n} ({name}): FAIL"),
    }
    if let Err(e) = result {
        resume_unwind(e);
    }
}

fn z(order: u64, exp: i64) -> RootOfUnity {
    RootOfUnity::new(order, exp)
}

fn cm(rows: &[&[i64]]) -> CartanMatrix {
    CartanMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn fl_braiding(q: RootOfUnity, a: &CartanMatrix) -> BraidingMatrix {
    let d = fl_symmetrizers(a).unwrap();
    BraidingMatrix::from_fl(q, a, &d).unwrap()
}

fn taft_datum() -> Datum {
    let group = AbelianGroup::elementary(3, 1);
    let g = vec![group.element(&[1]).unwrap()];
    let chi = vec![group.character(&[1]).unwrap()];
    validate_datum(&group, g, chi, None).unwrap()
}

fn a1a1_datum() -> Datum {
    let group = AbelianGroup::elementary(3, 2);
    let g = vec![
        group.element(&[1, 0]).unwrap(),
        group.element(&[1, 0]).unwrap(),
    ];
    let chi = vec![
        group.character(&[1, 0]).unwrap(),
        group.character(&[2, 0]).unwrap(),
    ];
    validate_datum(&group, g, chi, None).unwrap()
}

fn a2_datum() -> Datum {
    let group = AbelianGroup::elementary(3, 2);
    let g = vec![
        group.element(&[1, 0]).unwrap(),
        group.element(&[0, 1]).unwrap(),
    ];
    let chi = vec![
        group.character(&[1, 1]).unwrap(),
        group.character(&[1, 1]).unwrap(),
    ];
    validate_datum(&group, g, chi, None).unwrap()
}

#[test]
fn criterion_1_nichols_pbw_cross_oracle() {
    gate(1, "nichols dims equal the PBW series", || {
        struct Case {
            braiding: BraidingMatrix,
            cartan: CartanMatrix,
            orders: Vec<u64>,
            total: u64,
        }
        let cases = vec![
            Case {
                braiding: fl_braiding(z(3, 1), &cm(&[&[2]])),
                cartan: cm(&[&[2]]),
                orders: vec![3],
                total: 3,
            },
            Case {
                braiding: fl_braiding(z(5, 1), &cm(&[&[2]])),
                cartan: cm(&[&[2]]),
                orders: vec![5],
                total: 5,
            },
            Case {
                braiding: fl_braiding(z(7, 1), &cm(&[&[2]])),
                cartan: cm(&[&[2]]),
                orders: vec![7],
                total: 7,
            },
            Case {
                braiding: fl_braiding(z(3, 1), &cm(&[&[2, 0], &[0, 2]])),
                cartan: cm(&[&[2, 0], &[0, 2]]),
                orders: vec![3, 3],
                total: 9,
            },
            Case {
                braiding: fl_braiding(z(3, 1), &cm(&[&[2, -1], &[-1, 2]])),
                cartan: cm(&[&[2, -1], &[-1, 2]]),
                orders: vec![3],
                total: 27,
            },
        ];
        for case in cases {
            let rs = RootSystemData::build(&case.cartan).unwrap();
            let top: u64 = rs
                .positive_roots
                .iter()
                .zip(rs.positive_roots.iter().map(|b| {
                    case.orders[rs.component_of_root(b)]
                }))
                .map(|(b, n)| (n - 1) * cartanlift::rootsys::height(b) as u64)
                .sum();
            let max = top as u32 + 1;
            let dims = nichols_dims(&case.braiding, max, BUDGET).unwrap();
            let pbw = pbw_hilbert_series(&rs, &case.orders, max as usize).unwrap();
            assert_eq!(dims, pbw, "graded dims differ");
            assert_eq!(dims.iter().sum::<u64>(), case.total, "total differs");
        }
    });
}

#[test]
fn criterion_2_relation_vanishing() {
    gate(2, "defining relations vanish in the Nichols algebra", || {
        // A_2 at a third root of unity
        let a = cm(&[&[2, -1], &[-1, 2]]);
        let b = fl_braiding(z(3, 1), &a);
        for (i, j) in [(0, 1), (1, 0)] {
            let rel = serre_element(&b, a.get(i, j), i, j, 3);
            assert!(
                vanishes_in_nichols(&b, &rel, BUDGET).unwrap(),
                "Serre element ({i},{j})"
            );
        }
        // cube of the non-simple root vector
        let d = a2_datum();
        let rs = RootSystemData::build(&d.cartan).unwrap();
        let xs = root_vectors(&d, &rs).unwrap();
        let mid = xs[1].to_tensor(d.conductor()).unwrap();
        let cube = mid.mul(&mid).mul(&mid);
        assert!(vanishes_in_nichols(&d.braiding, &cube, BUDGET).unwrap());

        // rank one: x^N vanishes, x^{N-1} does not
        for n in [3u64, 5, 7] {
            let b = BraidingMatrix::new(vec![vec![z(n, 1)]]).unwrap();
            let x = TensorElem::generator(n, 0);
            let mut pow = x.clone();
            for _ in 1..n {
                pow = pow.mul(&x);
            }
            assert!(vanishes_in_nichols(&b, &pow, BUDGET).unwrap(), "x^{n}");
            let mut low = x.clone();
            for _ in 2..n {
                low = low.mul(&x);
            }
            assert!(
                !vanishes_in_nichols(&b, &low, BUDGET).unwrap(),
                "x^{} should survive",
                n - 1
            );
        }
    });
}

#[test]
fn criterion_3_lifted_dimensions() {
    gate(3, "lifted algebra dimensions match the formula", || {
        let d = taft_datum();
        let rs = RootSystemData::build(&d.cartan).unwrap();
        let rels = lifted_relations(&d, &rs, &LinkingDatum::empty()).unwrap();
        let q = truncated_quotient_dim(&rels, &d, 4, BUDGET).unwrap();
        assert!(q.stabilized);
        assert_eq!(q.total, 9);

        let d = a1a1_datum();
        let rs = RootSystemData::build(&d.cartan).unwrap();

        let rels0 = lifted_relations(&d, &rs, &LinkingDatum::empty()).unwrap();
        let q0 = truncated_quotient_dim(&rels0, &d, 6, BUDGET).unwrap();
        assert!(q0.stabilized);
        assert_eq!(q0.total, 81);

        let mut map = BTreeMap::new();
        map.insert(
            (0usize, 1usize),
            cartanlift::exactfield::CycloNum::one(d.conductor()),
        );
        let lambda = LinkingDatum::new(&d, map).unwrap();
        let rels1 = lifted_relations(&d, &rs, &lambda).unwrap();
        let q1 = truncated_quotient_dim(&rels1, &d, 6, BUDGET).unwrap();
        assert!(q1.stabilized);
        assert_eq!(q1.total, 81);
        assert_eq!(q0.total, q1.total);
    });
}

#[test]
fn criterion_4_cartan_detection_soundness() {
    gate(4, "Cartan detection recovers generating matrices", || {
        let mut rng = StdRng::seed_from_u64(0x4c1f7);
        // finite types of rank at most 3, with whether they contain G2
        let types: Vec<(CartanMatrix, bool)> = vec![
            (cm(&[&[2]]), false),
            (cm(&[&[2, 0], &[0, 2]]), false),
            (cm(&[&[2, -1], &[-1, 2]]), false),
            (cm(&[&[2, -1], &[-2, 2]]), false),
            (cm(&[&[2, -1], &[-3, 2]]), true),
            (cm(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]), false),
            (cm(&[&[2, -1, 0], &[-1, 2, 0], &[0, 0, 2]]), false),
            (cm(&[&[2, -1, 0], &[-2, 2, 0], &[0, 0, 2]]), false),
            (cm(&[&[2, -1, 0], &[-3, 2, 0], &[0, 0, 2]]), true),
            (cm(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]), false),
            (cm(&[&[2, -1, 0], &[-1, 2, -1], &[0, -2, 2]]), false),
            (cm(&[&[2, -1, 0], &[-1, 2, -2], &[0, -1, 2]]), false),
        ];
        let odd: Vec<u64> = vec![3, 5, 7, 9, 11, 13, 15];
        let mut twists_done = 0;
        for trial in 0..200 {
            let (a, has_g2) = &types[rng.gen_range(0..types.len())];
            let n = loop {
                let n = odd[rng.gen_range(0..odd.len())];
                if !(*has_g2 && n % 3 == 0) {
                    break n;
                }
            };
            let k = loop {
                let k = rng.gen_range(1..n);
                if gcd(k, n) == 1 {
                    break k;
                }
            };
            let b = fl_braiding(z(n, k as i64), a);
            match detect_cartan(&b) {
                CartanTypeResult::Cartan(found) => assert_eq!(&found, a, "trial {trial}"),
                CartanTypeResult::NotCartan { i, j } => {
                    panic!("trial {trial}: detection failed at ({i},{j})")
                }
            }
            if twists_done < 50 {
                twists_done += 1;
                let theta = a.theta();
                let omega: Vec<Vec<RootOfUnity>> = (0..theta)
                    .map(|_| {
                        (0..theta)
                            .map(|_| {
                                let order = rng.gen_range(1..=24u64);
                                z(order, rng.gen_range(0..order as i64 + 1))
                            })
                            .collect()
                    })
                    .collect();
                let tw = twist_braiding(&b, &omega).unwrap();
                assert_eq!(
                    detect_cartan(&tw),
                    CartanTypeResult::Cartan(a.clone()),
                    "twist changed the detected matrix"
                );
            }
        }
        assert_eq!(twists_done, 50);
    });
}

#[test]
fn criterion_5_linking_combinatorics() {
    gate(5, "linking combinatorics over (Z/3)^s", || {
        let mut two_partner_witness: Option<String> = None;
        for s in 1..=2usize {
            let data = enumerate_data(3, s, 4, None, true, BUDGET).unwrap();
            assert!(!data.is_empty());
            for d in &data {
                // the vertex bound is asserted inside enumerate_data as well
                assert!(d.theta() as u64 <= cartanlift::linking::theta_bound(3, s));
                let pairs = linkable_pairs(d);
                // q_j = q_i^{-1} on linkable pairs
                for &(i, j) in &pairs {
                    assert_eq!(d.braiding.get(j, j), d.braiding.get(i, i).inv());
                    assert!(linkable(d, i, j).linkable);
                }
                // no vertex linkable to two partners
                let mut seen = vec![0usize; d.theta()];
                for &(i, j) in &pairs {
                    seen[i] += 1;
                    seen[j] += 1;
                }
                if seen.iter().any(|&c| c > 1) && two_partner_witness.is_none() {
                    two_partner_witness = Some(format!(
                        "pairs {:?} on g = {:?}, chi = {:?}, cartan rows {:?}",
                        pairs,
                        d.g.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                        d.chi.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        d.cartan.rows(),
                    ));
                }
            }
        }
        assert!(
            two_partner_witness.is_none(),
            "a vertex is linkable to two partners: {}",
            two_partner_witness.unwrap()
        );
    });
}

#[test]
fn criterion_6_hypothesis_checker_fidelity() {
    gate(6, "hypothesis flags match the stated conditions", || {
        // A_2 at N = 3
        let report = check_hypotheses(&a2_datum(), None);
        assert!(!report.serre_lift_ok.ok);
        assert!(report
            .serre_lift_ok
            .reasons
            .iter()
            .any(|r| r.contains("N_I != 3")));

        // B_2 at N = 5 over (Z/5)^2
        let group = AbelianGroup::elementary(5, 2);
        let g = vec![
            group.element(&[1, 0]).unwrap(),
            group.element(&[0, 1]).unwrap(),
        ];
        let chi = vec![
            group.character(&[4, 3]).unwrap(),
            group.character(&[3, 2]).unwrap(),
        ];
        let d = validate_datum(&group, g, chi, None).unwrap();
        assert!(d.components.components[0].dynkin.is_bcf());
        assert_eq!(d.components.orders, vec![5]);
        let report = check_hypotheses(&d, None);
        assert!(!report.serre_lift_ok.ok);
        assert!(report
            .serre_lift_ok
            .reasons
            .iter()
            .any(|r| r.contains("N_I != 5")));

        // (Z/19)^2 datum: main classification applicable
        let group = AbelianGroup::elementary(19, 2);
        let g = vec![
            group.element(&[1, 0]).unwrap(),
            group.element(&[0, 1]).unwrap(),
        ];
        let chi = vec![
            group.character(&[1, 0]).unwrap(),
            group.character(&[0, 1]).unwrap(),
        ];
        let d = validate_datum(&group, g, chi, None).unwrap();
        let report = check_hypotheses(&d, None);
        assert!(report.thm_main_applicable.ok);
    });
}

#[test]
fn criterion_7_report_determinism() {
    gate(7, "reports are byte-identical across thread counts", || {
        let dir = std::env::temp_dir().join("cartanlift-acceptance");
        std::fs::create_dir_all(&dir).unwrap();
        let a2 = dir.join("a2.toml");
        std::fs::write(
            &a2,
            "[group]\norders = [3, 3]\n\n[[vertex]]\ng = [1, 0]\nchi = [1, 1]\n\n[[vertex]]\ng = [0, 1]\nchi = [1, 1]\n",
        )
        .unwrap();
        let linked = dir.join("linked.toml");
        std::fs::write(
            &linked,
            "[group]\norders = [3, 3]\n\n[[vertex]]\ng = [1, 0]\nchi = [1, 0]\n\n[[vertex]]\ng = [1, 0]\nchi = [2, 0]\n\n[[link]]\ni = 1\nj = 2\nlambda = \"1\"\n",
        )
        .unwrap();

        let bin = env!("CARGO_BIN_EXE_cartanlift");
        let run = |args: &[&str]| {
            let out = Command::new(bin).args(args).output().unwrap();
            assert!(
                out.status.success(),
                "command {:?} failed: {}",
                args,
                String::from_utf8_lossy(&out.stderr)
            );
            out.stdout
        };

        for file in [&a2, &linked] {
            let f = file.to_str().unwrap();
            let one = run(&["nichols", f, "--threads", "1"]);
            let many = run(&["nichols", f, "--threads", "4"]);
            assert_eq!(one, many, "nichols report differs across thread counts");
        }
        let f = linked.to_str().unwrap();
        let one = run(&["lift", f, "--max-degree", "6", "--threads", "1"]);
        let many = run(&["lift", f, "--max-degree", "6", "--threads", "4"]);
        assert_eq!(one, many, "lift report differs across thread counts");
    });
}
