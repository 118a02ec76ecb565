mod common;

use common::{bundle, rl_insert1, small_triangulations, RL_INSERT1_JSON};
use tri_core::angle::{
    angle_space_dimension, enumerate_taut_exhaustive, CertificateDefect, TransportError,
};
use tri_core::exact::dot;
use tri_core::normal::{quad_corner_sum, triangle_corner_sum};
use tri_core::triangulation::pachner_23;
use tri_core::{
    build_system, enumerate_taut, fixtures, is_semi_angle, is_taut, solve_angle,
    taut_transport_23, verify_certificate, AngleAssignment, AngleVerdict, Certificate, LpStatus,
    Rational, TautStructure, Triangulation,
};

fn certificate_of(tri: &Triangulation) -> Certificate {
    match solve_angle(tri).unwrap().verdict {
        AngleVerdict::NoAngleStructure { cert } => cert,
        other => panic!("expected an obstruction, got {other:?}"),
    }
}

#[test]
fn figure_eight_angle_structure() {
    let tri = fixtures::figure_eight();
    let sol = solve_angle(&tri).unwrap();
    assert_eq!(sol.lp.status, LpStatus::Optimal);
    assert_eq!(sol.slack(), Some(&Rational::new(1, 3)));
    let AngleVerdict::AngleStructure { witness } = &sol.verdict else {
        panic!("{:?}", sol.verdict);
    };
    let sys = build_system(&tri);
    assert!(sys.is_solution(witness));
    assert!(witness.values.iter().flatten().all(|x| *x >= Rational::new(1, 3)));
    assert_eq!(dot(&sys.rhs, &sol.lp.dual), Rational::new(1, 3));
}

#[test]
fn figure_eight_taut_structures() {
    let tri = fixtures::figure_eight();
    let all = enumerate_taut(&tri);
    let fibration = bundle("RL", &[]);
    assert!(all.len() >= 3);
    // the fibration structure of the layered copy is one of them
    assert!(is_taut(&fibration.triangulation, &fibration.taut));
    assert!(all.contains(&TautStructure { pi_pair: vec![0, 0] }));
    let sys = build_system(&tri);
    assert!(all.iter().all(|t| is_semi_angle(&t.to_assignment(), &sys)));
}

#[test]
fn example_one_golden_and_obstruction() {
    let b = bundle("RL", &[1]);
    assert_eq!(b.triangulation.to_json() + "\n", RL_INSERT1_JSON);
    let tri = Triangulation::from_json(RL_INSERT1_JSON).unwrap();
    assert_eq!(tri.size(), 4);
    let sol = solve_angle(&tri).unwrap();
    assert_eq!(sol.slack(), Some(&Rational::zero()));
    let AngleVerdict::NoAngleStructure { cert } = &sol.verdict else {
        panic!("{:?}", sol.verdict);
    };
    assert_eq!(verify_certificate(&tri, cert, Some(&b.taut)), Ok(()));
    for taut in enumerate_taut(&tri) {
        assert_eq!(verify_certificate(&tri, cert, Some(&taut)), Ok(()));
    }
    assert_eq!(dot(&build_system(&tri).rhs, &sol.lp.dual), Rational::zero());
}

#[test]
fn certificate_mutations_are_caught() {
    let tri = rl_insert1();
    let cert = certificate_of(&tri);
    let k = tri.size();
    for i in 0..k {
        for delta in [-1, 1] {
            let mut c = cert.clone();
            c.n[i] += delta;
            assert!(verify_certificate(&tri, &c, None).is_err());
            let mut c = cert.clone();
            c.m[i] += delta;
            assert!(verify_certificate(&tri, &c, None).is_err());
            for p in 0..3 {
                let mut c = cert.clone();
                c.q[i][p] += delta;
                assert!(verify_certificate(&tri, &c, None).is_err());
            }
        }
    }
    for j in (0..k).filter(|&j| cert.m[j] != 0) {
        let mut c = cert.clone();
        c.m[j] = -c.m[j];
        assert!(verify_certificate(&tri, &c, None).is_err());
    }
}

#[test]
fn zero_certificate_is_rejected() {
    let tri = rl_insert1();
    let zero = Certificate {
        n: vec![0; 4],
        m: vec![0; 4],
        q: vec![[0; 3]; 4],
    };
    assert_eq!(verify_certificate(&tri, &zero, None), Err(CertificateDefect::ZeroQ));
}

#[test]
fn taut_check_flags_zero_angle_quads() {
    let tri = rl_insert1();
    let cert = certificate_of(&tri);
    // a structure that is not taut is refused outright
    let bogus = TautStructure { pi_pair: vec![1; 4] };
    if !is_taut(&tri, &bogus) {
        assert_eq!(
            verify_certificate(&tri, &cert, Some(&bogus)),
            Err(CertificateDefect::InvalidTaut)
        );
    }
}

#[test]
fn backtracking_matches_exhaustive_scan() {
    for (name, tri) in small_triangulations(6) {
        assert_eq!(enumerate_taut(&tri), enumerate_taut_exhaustive(&tri), "{name}");
    }
}

#[test]
fn taut_corner_sums() {
    for (name, tri) in small_triangulations(5) {
        for taut in enumerate_taut(&tri) {
            let a = taut.to_assignment();
            for t in 0..tri.size() {
                for v in 0..4 {
                    assert_eq!(triangle_corner_sum(&a, t, v), Rational::one(), "{name}");
                }
                for p in 0..3 {
                    let s = quad_corner_sum(&a, t, p);
                    assert!(s.is_zero() || s == Rational::from(2), "{name}");
                }
            }
        }
    }
}

#[test]
fn semi_angle_predicate() {
    let tri = fixtures::figure_eight();
    let sys = build_system(&tri);
    assert!(is_semi_angle(&AngleAssignment::uniform(2, Rational::new(1, 3)), &sys));
    assert!(!is_semi_angle(&AngleAssignment::uniform(2, Rational::zero()), &sys));
    let mut negative = AngleAssignment::uniform(2, Rational::new(1, 3));
    negative.values[0] = [Rational::new(2, 3), Rational::new(2, 3), Rational::new(-1, 3)];
    negative.values[1] = [Rational::zero(), Rational::zero(), Rational::one()];
    assert!(!is_semi_angle(&negative, &sys));
}

#[test]
fn verdicts_on_small_inputs_follow_degree_two_edges() {
    for (name, tri) in small_triangulations(6) {
        let sol = solve_angle(&tri).unwrap();
        let has_degree_two = tri.degrees().contains(&2);
        match &sol.verdict {
            AngleVerdict::AngleStructure { witness } => {
                assert!(!has_degree_two, "{name}");
                assert!(build_system(&tri).is_solution(witness));
                assert!(witness.values.iter().flatten().all(Rational::is_positive));
            }
            AngleVerdict::NoAngleStructure { cert } => {
                assert!(has_degree_two, "{name}");
                assert_eq!(verify_certificate(&tri, cert, None), Ok(()));
            }
            AngleVerdict::NoSemiAngle => panic!("{name}: no semi-angle structure"),
        }
    }
}

#[test]
fn solver_is_deterministic() {
    let tri = rl_insert1();
    let a = solve_angle(&tri).unwrap();
    let b = solve_angle(&tri).unwrap();
    assert_eq!(a.verdict, b.verdict);
    assert_eq!(a.lp, b.lp);
}

#[test]
fn angle_space_dimension_is_k_plus_cusps() {
    for (name, tri) in small_triangulations(5) {
        assert_eq!(
            angle_space_dimension(&tri),
            tri.size() + tri.cusps().len(),
            "{name}"
        );
    }
}

#[test]
fn transport_over_small_inputs() {
    let mut per_input = Vec::new();
    for (name, tri) in small_triangulations(4) {
        let (mut carried, mut total) = (0usize, 0usize);
        for taut in enumerate_taut(&tri) {
            for t in 0..tri.size() {
                for f in 0..4 {
                    if tri.gluing(t, f).0 == t {
                        continue;
                    }
                    total += 1;
                    let out = taut_transport_23(&tri, &taut, t, f).unwrap();
                    if let Some(new) = out.taut {
                        carried += 1;
                        assert!(is_taut(&out.triangulation, &new), "{name}");
                        // agrees away from the move
                        let unchanged = tri.size() - 2;
                        let old: Vec<u8> = (0..tri.size())
                            .filter(|&x| x != t && x != tri.gluing(t, f).0)
                            .map(|x| taut.pi_pair[x])
                            .collect();
                        assert_eq!(&new.pi_pair[..unchanged], old.as_slice(), "{name}");
                    }
                }
            }
        }
        per_input.push((name, carried, total));
    }
    let (_, carried, total) = &per_input[0];
    assert!(3 * carried >= 2 * total, "figure-eight {carried}/{total}");
}

#[test]
fn transport_rejects_invalid_inputs() {
    let tri = fixtures::figure_eight();
    let taut = enumerate_taut(&tri)[0].clone();
    assert!(matches!(
        taut_transport_23(&tri, &taut, 5, 0),
        Err(TransportError::Move(_))
    ));
    assert_eq!(
        taut_transport_23(&tri, &TautStructure { pi_pair: vec![1, 1] }, 0, 0).unwrap_err(),
        TransportError::InvalidTaut
    );
}

#[test]
fn existence_survives_two_three_moves() {
    // a move across the face of a cancelling pair can leave a degree-1 edge,
    // turning "no angle structure" into "no semi-angle structure"; existence
    // of an angle structure is what must not change
    for (name, tri) in small_triangulations(4) {
        let before = solve_angle(&tri).unwrap().verdict.has_angle_structure();
        for t in 0..tri.size() {
            for f in 0..4 {
                if tri.gluing(t, f).0 == t {
                    continue;
                }
                let after = solve_angle(&pachner_23(&tri, t, f).unwrap()).unwrap();
                assert_eq!(after.verdict.has_angle_structure(), before, "{name} ({t},{f})");
            }
        }
    }
}
