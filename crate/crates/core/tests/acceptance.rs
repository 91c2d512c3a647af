//! Acceptance suite: one test per release criterion, each ending in a
//! single pass line. Every expected value here is frozen from exact
//! machine computation and cross-checked between independent oracles.

use spinchain::catalog::{catalog, find};
use spinchain::charge_solver::{ring_orbit_commutator, search_charges, verify_ring_charge};
use spinchain::criteria::{
    check_injectivity, check_two_local_condition, hokkyo_test, iota2, Verdict,
};
use spinchain::frustration::{build_graph, classify, find_claws, find_even_holes, Implication};
use spinchain::lattice::{Boundary, ModelSpec};
use spinchain::operator::{Convention, LocalOperator};
use spinchain::poly::{grat_int, GRat, ParamSet, Ring};

fn op(ring: &Ring, text: &str) -> LocalOperator {
    LocalOperator::from_text(ring, text).unwrap()
}

fn assert_same(a: &LocalOperator, b: &LocalOperator, context: &str) {
    let diff = a.sub(b).unwrap();
    assert!(diff.is_zero(), "{context}: differ by {}", diff.to_text(1));
}

/// Criterion 1: the halved-commutator column expressions match the printed
/// worked rows sign-for-sign.
#[test]
fn c1_column_expression_fidelity() {
    let ring = ParamSet::empty();
    // (lhs, rhs, [lhs, rhs] / 2i), derived by hand from the single-site
    // products XY = iZ, YZ = iX, ZX = iY
    let golden: &[(&str, &str, &str)] = &[
        ("X1", "Y1", "Z1"),
        ("Y1", "Z1", "X1"),
        ("Z1", "X1", "Y1"),
        ("Y1", "X1", "-1 * Z1"),
        ("Z1", "Y1", "-1 * X1"),
        ("X1", "Z1", "-1 * Y1"),
        ("X1 X2", "Y2", "X1 Z2"),
        ("X1 X2", "Y1", "Z1 X2"),
        ("Z1 Z2", "X2", "Z1 Y2"),
        ("Z1 Z2", "X1", "Y1 Z2"),
        ("Z1", "X1 X2", "Y1 X2"),
        ("X1 X2", "Z2 X3", "-1 * X1 Y2 X3"),
        ("X1 X2", "Y2 Y3", "X1 Z2 Y3"),
        ("Y1 Y2", "Z2 X3", "Y1 X2 X3"),
        ("X1 X2", "Y1 Y2", "0"),
        ("X1 Z2", "Z1 X2", "0"),
        ("X1 Y2", "Y1 Z2", "0"),
        ("X1 Y2", "X1 Z2", "X2"),
        ("X1 Y2 Z3", "Y3 Z4", "-1 * X1 Y2 X3 Z4"),
        ("X1 Y2 Z3", "X2 X3", "0"),
        ("X1 Y2 Z3", "X2 Z3", "-1 * X1 Z2"),
        ("X1 X2 Z3", "Z2", "-1 * X1 Y2 Z3"),
        ("X1 X2 Z3", "X3 X4", "X1 X2 Y3 X4"),
        ("Y1 Y2 Z3", "X3 X4", "Y1 Y2 Y3 X4"),
        ("Z1 X2 X3", "X3 Y4", "0"),
        ("(IX)(XZ)", "(IZ)(YY)", "-1 * (IY)(ZX)"),
    ];
    assert!(golden.len() >= 20);
    for (a, b, want) in golden {
        let got = op(&ring, a)
            .commutator(&op(&ring, b), Convention::Halved)
            .unwrap();
        assert_same(&got, &op(&ring, want), &format!("[{a}, {b}]"));
    }
    println!("[PASS] criterion 1: column-expression fidelity ({} golden rows)", golden.len());
}

/// Criterion 2: the deformed Fredkin chain passes injectivity and the
/// 2-local condition and is certified nonintegrable, symbolically in t.
#[test]
fn c2_deformed_fredkin_pipeline() {
    let spec = find("deformed_fredkin").unwrap().composite();
    let inj = check_injectivity(&spec);
    assert!(inj.holds, "injectivity fails");

    let two = check_two_local_condition(&spec).unwrap();
    assert!(two.holds_generic);
    assert_eq!(two.dimension, 1, "B^(2) must be the span of h^(2) alone");
    assert!(two.excluded_loci.is_empty());

    let cert = hokkyo_test(&spec).unwrap();
    assert_eq!(cert.verdict, Verdict::Nonintegrable);
    assert!(cert.excluded_loci.is_empty(), "verdict must hold for all t != 0");
    let obs = cert.obstruction.unwrap();
    assert_same(
        &op(&spec.ring, &obs.term),
        &op(&spec.ring, "-8*t^3 * (IX)(XI)(ZZ)"),
        "obstruction",
    );
    assert!(!obs.sources.is_empty(), "obstruction must carry its audit trail");
    println!("[PASS] criterion 2: deformed Fredkin pipeline, obstruction -8*t^3 * (IX)(XI)(ZZ)");
}

fn check_against_record(id: &str) -> Verdict {
    let entry = find(id).unwrap();
    let spec = entry.composite();
    let expected = &entry.expected;
    assert!(expected.admissible, "{id}: record expects admissibility");
    let cert = hokkyo_test(&spec).unwrap();
    assert_eq!(Some(cert.verdict), expected.verdict, "{id}: verdict");
    let loci: Vec<&str> = cert.excluded_loci.iter().map(|s| s.as_str()).collect();
    assert_eq!(loci, expected.loci, "{id}: excluded loci");
    if let Some(correction) = expected.correction {
        let want = iota2(&spec).unwrap().add(&op(&spec.ring, correction)).unwrap();
        let got = op(&spec.ring, cert.charge.as_deref().unwrap());
        assert_same(&got, &want, &format!("{id}: charge density"));
    }
    if let Some(obstruction) = expected.obstruction {
        let got = cert.obstruction.as_ref().unwrap();
        assert_same(
            &op(&spec.ring, &got.term),
            &op(&spec.ring, obstruction),
            &format!("{id}: obstruction"),
        );
    }
    cert.verdict
}

/// Criterion 3: the ten minimal composite models reproduce the recorded
/// classification: seven integrable with the stated corrections and loci,
/// and three whose bond symmetries defeat the preconditions of the
/// 3-local test while supplying conserved charges at every locality.
#[test]
fn c3_minimal_model_classification() {
    let ids = [
        "min:Ia", "min:Ib", "min:IIa", "min:IIb", "min:IIIa", "min:IIIb", "min:IIIc",
        "min:IVa", "min:IVb", "min:Va",
    ];
    let mut integrable = 0;
    let mut symmetric = 0;
    for id in ids {
        match check_against_record(id) {
            Verdict::Integrable => integrable += 1,
            Verdict::Nonintegrable => panic!("{id}: nonintegrable"),
            Verdict::Inconclusive => symmetric += 1,
        }
    }
    assert_eq!((integrable, symmetric), (7, 3));

    // spot checks straight off the record: the one nontrivial correction
    // and the two nontrivial loci
    let iiia = find("min:IIIa").unwrap();
    assert_eq!(iiia.expected.correction, Some("-c1*c2 * (IY)(ZX)"));
    let ib = find("min:Ib").unwrap();
    assert_eq!(ib.expected.loci, ["c1 + c2"]);
    let iiib = find("min:IIIb").unwrap();
    assert_eq!(iiib.expected.loci, ["c1 - c2"]);

    // each inconclusive entry records three bond symmetries commuting
    // with every Hamiltonian term individually; brute force confirms the
    // conserved window-4 space is h plus the symmetries and that their
    // products populate window 6
    for id in ["min:IIa", "min:IVa", "min:IVb"] {
        let entry = find(id).unwrap();
        assert_eq!(entry.expected.known_charges.len(), 3);
        let spec = entry.composite();
        let h = spec.density();
        for sym in entry.expected.known_charges {
            let q = op(&spec.ring, sym);
            let termwise = q.commutator(&h, Convention::Halved).unwrap().is_zero()
                && q.commutator(&h.translated(2), Convention::Halved)
                    .unwrap()
                    .is_zero()
                && q.translated(2)
                    .commutator(&h, Convention::Halved)
                    .unwrap()
                    .is_zero();
            assert!(termwise, "{id}: {sym} does not commute termwise");
        }
        let m = ModelSpec::NearestNeighbor(spec.clone());
        let point = [grat_int(2), grat_int(3)];
        let d4 = search_charges(&m, 4, 12, &point).unwrap();
        let d6 = search_charges(&m, 6, 12, &point).unwrap();
        assert_eq!(d4.dimension, 4, "{id}: expected h plus three bond symmetries");
        assert_eq!(d6.dimension, 13, "{id}: expected the symmetry products at window 6");
    }
    println!("[PASS] criterion 3: minimal models classify 7 integrable / 3 with bond symmetries");
}

/// Criterion 4: the extended composite families reproduce the recorded
/// 1/4 classification; the nonintegrable families outside the 3-local
/// test's preconditions are settled by brute force, and the special locus
/// of the third family carries its extra charge.
#[test]
fn c4_extended_family_classification() {
    // ext:I is integrable with both recorded 3-local charge densities
    assert_eq!(check_against_record("ext:I"), Verdict::Integrable);
    let ext1 = find("ext:I").unwrap();
    assert_eq!(ext1.expected.known_charges.len(), 2);
    for charge in ext1.expected.known_charges {
        let q = op(ext1.spec.ring(), charge);
        assert!(
            verify_ring_charge(&q, &ext1.spec, 8).unwrap(),
            "ext:I charge not conserved: {charge}"
        );
    }

    // ext:III is decided by the 3-local test
    assert_eq!(check_against_record("ext:III"), Verdict::Nonintegrable);

    // ext:II, ext:IV, ext:V fail injectivity, so their record rests on
    // the absence of any new translationally invariant charge up to three
    // cells at a generic parameter point
    for id in ["ext:II", "ext:IV", "ext:V"] {
        let entry = find(id).unwrap();
        assert!(!entry.expected.admissible);
        assert!(!check_injectivity(&entry.composite()).admissible());
        assert_eq!(entry.expected.verdict, Some(Verdict::Nonintegrable));
        let point = [grat_int(2), grat_int(3)];
        let d2 = search_charges(&entry.spec, 4, 12, &point).unwrap();
        let d3 = search_charges(&entry.spec, 6, 12, &point).unwrap();
        assert_eq!(
            d2.dimension, d3.dimension,
            "{id}: a strictly 3-cell charge appeared"
        );
    }

    // the special locus c1 = c2 of ext:III carries the extra charge
    let ext3 = find("ext:III").unwrap();
    let (locus, charge) = ext3.expected.special_point_charge.unwrap();
    assert_eq!(locus, "c1 - c2");
    let spec = ext3.composite();
    let empty = ParamSet::empty();
    let on_locus: Vec<GRat> = vec![grat_int(1), grat_int(1)];
    let h = spec.instantiate(8).unwrap().eval(&on_locus, &empty).unwrap();
    let q = op(&empty, charge);
    assert!(
        ring_orbit_commutator(&q, &h, 8, 2).unwrap().is_zero(),
        "special locus charge not conserved"
    );
    // and off the locus it is not conserved
    let off_locus: Vec<GRat> = vec![grat_int(2), grat_int(3)];
    let h = spec.instantiate(8).unwrap().eval(&off_locus, &empty).unwrap();
    assert!(!ring_orbit_commutator(&q, &h, 8, 2).unwrap().is_zero());
    println!("[PASS] criterion 4: extended families classify 1 integrable / 4 nonintegrable");
}

/// Criterion 5: composite regrouping is exact term-for-term, and the
/// recorded strictly 5-local charges of the first three-site family are
/// conserved symbolically on 8- and 10-site rings.
#[test]
fn c5_cross_representation_checks() {
    for x in ["I", "II", "III", "IV", "V"] {
        let tilde = find(&format!("tilde:{x}")).unwrap();
        let ext = find(&format!("ext:{x}")).unwrap();
        let regrouped = tilde.composite();
        let direct = ext.composite();
        assert_same(
            &regrouped.density2,
            &direct.density2,
            &format!("family {x}: two-cell density"),
        );
        assert_same(
            &regrouped.density1,
            &direct.density1,
            &format!("family {x}: on-site density"),
        );
    }

    let tilde1 = find("tilde:I").unwrap();
    assert_eq!(tilde1.expected.known_charges.len(), 2);
    for n in [8u32, 10] {
        for charge in tilde1.expected.known_charges {
            let q = op(tilde1.spec.ring(), charge);
            assert!(
                verify_ring_charge(&q, &tilde1.spec, n).unwrap(),
                "Q5 family member not conserved at N = {n}: {charge}"
            );
        }
    }
    println!("[PASS] criterion 5: composite regrouping exact; Q5 and Q'5 conserved at N = 8, 10");
}

/// Criterion 6: brute-force ring searches at three generic rational points
/// agree with every symbolic verdict, and the first three-site family has
/// no strictly 4-local charge.
#[test]
fn c6_oracle_concordance() {
    let points: [&[GRat]; 3] = [
        &[grat_int(2), grat_int(3)],
        &[grat_int(3), grat_int(5)],
        &[grat_int(5), grat_int(7)],
    ];
    for entry in catalog() {
        if !entry.expected.admissible {
            continue;
        }
        // tilde entries share their composite verdict with the matching
        // ext entry; skip the duplicate brute force
        if entry.id.starts_with("tilde:") {
            continue;
        }
        let spec = entry.composite();
        let verdict = hokkyo_test(&spec).unwrap().verdict;
        let m = ModelSpec::NearestNeighbor(spec.clone());
        let u = spec.unit_cell;
        let n = 6 * u;
        for point in points {
            let point = &point[..spec.ring.len()];
            let d2 = search_charges(&m, 2 * u, n, point).unwrap();
            let d3 = search_charges(&m, 3 * u, n, point).unwrap();
            let found_new = d3.dimension > d2.dimension;
            match verdict {
                Verdict::Integrable => assert!(
                    found_new,
                    "{}: integrable but no strictly 3-cell charge at {:?}",
                    entry.id, point
                ),
                Verdict::Nonintegrable => assert!(
                    !found_new,
                    "{}: nonintegrable but a strictly 3-cell charge appeared at {:?}",
                    entry.id, point
                ),
                // inconclusive entries carry bond symmetries whose
                // products are strictly 3-cell conserved charges
                Verdict::Inconclusive => assert!(
                    found_new,
                    "{}: no strictly 3-cell symmetry product at {:?}",
                    entry.id, point
                ),
            }
        }
    }

    // absence of a strictly 4-local charge for the first three-site family
    let tilde1 = find("tilde:I").unwrap();
    let point = [grat_int(2), grat_int(3)];
    let d3 = search_charges(&tilde1.spec, 3, 10, &point).unwrap();
    let d4 = search_charges(&tilde1.spec, 4, 10, &point).unwrap();
    let d5 = search_charges(&tilde1.spec, 5, 10, &point).unwrap();
    assert_eq!(d3.dimension, d4.dimension, "a strictly 4-local charge appeared");
    assert_eq!(d5.dimension, d3.dimension + 2, "Q5 and Q'5 must appear at window 5");
    println!("[PASS] criterion 6: brute-force searches agree with every symbolic verdict");
}

fn brute_force_claw_count(g: &spinchain::frustration::FrustrationGraph) -> usize {
    let n = g.n_vertices();
    let mut count = 0;
    for c in 0..n {
        for a in 0..n {
            for b in (a + 1)..n {
                for d in (b + 1)..n {
                    if a == c || b == c || d == c {
                        continue;
                    }
                    if g.adjacent(c, a)
                        && g.adjacent(c, b)
                        && g.adjacent(c, d)
                        && !g.adjacent(a, b)
                        && !g.adjacent(a, d)
                        && !g.adjacent(b, d)
                    {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

fn brute_force_even_hole_count(g: &spinchain::frustration::FrustrationGraph, max_len: u32) -> usize {
    // every vertex subset that induces a chordless cycle of even length
    let n = g.n_vertices();
    assert!(n <= 24);
    let mut count = 0;
    for mask in 0u32..(1 << n) {
        let verts: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        let k = verts.len();
        if k < 4 || k % 2 != 0 || k as u32 > max_len {
            continue;
        }
        // 2-regular induced subgraph
        if !verts.iter().all(|&v| {
            verts.iter().filter(|&&w| w != v && g.adjacent(v, w)).count() == 2
        }) {
            continue;
        }
        // connected: walk the cycle
        let mut seen = vec![verts[0]];
        let mut prev = verts[0];
        let mut cur = *verts[1..].iter().find(|&&w| g.adjacent(verts[0], w)).unwrap();
        while cur != verts[0] {
            seen.push(cur);
            let next = *verts
                .iter()
                .find(|&&w| w != prev && g.adjacent(cur, w))
                .unwrap();
            prev = cur;
            cur = next;
        }
        if seen.len() == k {
            count += 1;
        }
    }
    count
}

/// Criterion 7: frustration-graph classifications on the reference models,
/// with the search-based finders validated against exhaustive enumeration.
#[test]
fn c7_frustration_graphs() {
    let ffd = find("ffd").unwrap().spec;
    let open = build_graph(&ffd, 8, Boundary::Open).unwrap();
    let open_report = classify(&open, 12);
    assert!(open_report.claw_free && open_report.even_hole_free);
    assert!(matches!(open_report.implication, Implication::FreeFermionByGraph));

    let periodic = build_graph(&ffd, 8, Boundary::Periodic).unwrap();
    let periodic_report = classify(&periodic, 12);
    assert!(periodic_report.claw_free);
    assert!(!periodic_report.even_hole_free, "the ring closes even holes");
    assert!(matches!(periodic_report.implication, Implication::IntegrableByGraph));

    // the second three-site family contains the printed claw
    let tilde2 = find("tilde:II").unwrap().spec;
    let g2 = build_graph(&tilde2, 8, Boundary::Open).unwrap();
    let claws = find_claws(&g2);
    let printed: Vec<String> = ["p1", "p3", "p5", "q5"].map(String::from).to_vec();
    assert!(
        claws.iter().any(|w| {
            let mut v = w.vertices.clone();
            v.sort();
            v == printed
        }),
        "claw {{p1, p3, p5, q5}} not found"
    );

    // the composite IIIa graph is a triangulated ladder: claw-free with
    // even holes on a ring, agreeing with the integrable verdict
    let iiia = find("min:IIIa").unwrap().spec;
    let g3 = build_graph(&iiia, 12, Boundary::Periodic).unwrap();
    let report3 = classify(&g3, 8);
    assert!(report3.claw_free);
    assert!(!report3.even_hole_free);
    assert!(matches!(report3.implication, Implication::IntegrableByGraph));
    assert!(report3.extrapolated, "composite cells extrapolate the graph criterion");

    // finders vs exhaustive enumeration on every graph above
    for g in [&open, &periodic, &g2, &g3] {
        assert!(g.n_vertices() <= 24);
        assert_eq!(find_claws(g).len(), brute_force_claw_count(g), "claw finder");
        assert_eq!(
            find_even_holes(g, 12).len(),
            brute_force_even_hole_count(g, 12),
            "even-hole finder"
        );
    }
    println!("[PASS] criterion 7: frustration graphs classify and finders match enumeration");
}

/// Criterion 8: algebraic property suites; the Jacobi identity on 500
/// random string triples, translation group action, verdict invariance
/// under scaling, and dense-matrix agreement on 6-site windows.
#[test]
fn c8_property_suites() {
    use rand::{Rng, SeedableRng};
    use spinchain::charge_solver::{dense_commutator, to_dense};
    use spinchain::lattice::translate;
    use spinchain::pauli::PauliKey;

    let ring = ParamSet::empty();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260823);
    let random_op = |rng: &mut rand_chacha::ChaCha8Rng| {
        let mut o = LocalOperator::zero(&ring);
        for _ in 0..rng.gen_range(1..=3) {
            let key = PauliKey {
                x: rng.gen_range(0..64u64),
                z: rng.gen_range(0..64u64),
            };
            if key.is_identity() {
                continue;
            }
            let c = spinchain::poly::Coefficient::constant(
                &ring,
                spinchain::poly::grat_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4)),
            );
            o.add_word_term(key, c);
        }
        o
    };

    // Jacobi: [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
    for _ in 0..500 {
        let (a, b, c) = (random_op(&mut rng), random_op(&mut rng), random_op(&mut rng));
        let j = a
            .commutator(&b, Convention::Exact)
            .unwrap()
            .commutator(&c, Convention::Exact)
            .unwrap()
            .add(
                &b.commutator(&c, Convention::Exact)
                    .unwrap()
                    .commutator(&a, Convention::Exact)
                    .unwrap(),
            )
            .unwrap()
            .add(
                &c.commutator(&a, Convention::Exact)
                    .unwrap()
                    .commutator(&b, Convention::Exact)
                    .unwrap(),
            )
            .unwrap();
        assert!(j.is_zero(), "Jacobi identity failed");
    }

    // translation acts as a group and commutes with the bracket
    for _ in 0..50 {
        let a = random_op(&mut rng);
        let b = random_op(&mut rng);
        let t3 = translate(&a, 3, 12, Boundary::Periodic).unwrap();
        let t_split = translate(
            &translate(&a, 2, 12, Boundary::Periodic).unwrap(),
            1,
            12,
            Boundary::Periodic,
        )
        .unwrap();
        assert_same(&t3, &t_split, "T^3 = T^1 T^2");
        let round = translate(&t3, 9, 12, Boundary::Periodic).unwrap();
        assert_same(&round, &a, "T^12 = 1");
        let lhs = translate(
            &a.commutator(&b, Convention::Exact).unwrap(),
            5,
            12,
            Boundary::Periodic,
        )
        .unwrap();
        let rhs = translate(&a, 5, 12, Boundary::Periodic)
            .unwrap()
            .commutator(&translate(&b, 5, 12, Boundary::Periodic).unwrap(), Convention::Exact)
            .unwrap();
        assert_same(&lhs, &rhs, "translation commutes with the bracket");
    }

    // verdicts are invariant under scaling the density
    for id in ["min:IIIa", "min:IVa"] {
        let entry = find(id).unwrap();
        let spec = entry.composite();
        let scaled = spinchain::lattice::HamiltonianSpec::new(
            spec.name.clone(),
            spec.unit_cell,
            spec.boundary,
            spec.ring.clone(),
            spec.density2
                .scale_grat(&spinchain::poly::grat_ratio(-3, 7)),
            spec.density1.clone(),
        )
        .unwrap();
        assert_eq!(
            hokkyo_test(&spec).unwrap().verdict,
            hokkyo_test(&scaled).unwrap().verdict,
            "{id}: verdict changed under scaling"
        );
    }

    // dense matrices agree with the string algebra on 6-site windows
    for _ in 0..20 {
        let mut a = random_op(&mut rng);
        let mut b = random_op(&mut rng);
        a = LocalOperator::from_text(&ring, &a.to_text(1)).unwrap();
        b = LocalOperator::from_text(&ring, &b.to_text(1)).unwrap();
        let a6 = restrict_to_six(&a, &ring);
        let b6 = restrict_to_six(&b, &ring);
        let via_strings = a6.commutator(&b6, Convention::Exact).unwrap();
        let lhs = to_dense(&via_strings, 6, &[]).unwrap();
        let rhs = dense_commutator(&to_dense(&a6, 6, &[]).unwrap(), &to_dense(&b6, 6, &[]).unwrap());
        assert_eq!(lhs, rhs, "dense and string commutators differ");
    }
    println!("[PASS] criterion 8: Jacobi, translation action, scaling invariance, dense agreement");
}

/// Drop the letters of every term outside the first six sites.
fn restrict_to_six(o: &LocalOperator, ring: &Ring) -> LocalOperator {
    let mask = (1u64 << 6) - 1;
    let mut out = LocalOperator::zero(ring);
    for (k, c) in o.xz_terms() {
        let key = spinchain::pauli::PauliKey {
            x: k.x & mask,
            z: k.z & mask,
        };
        if !key.is_identity() {
            out.add_xz_term(key, c.clone());
        }
    }
    out
}
