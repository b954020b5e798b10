use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use recfun::permgroup::*;
use recfun::Nat;

const N: u64 = 1 << 12;

fn n(x: u64) -> Nat {
    Nat::from(x)
}

fn random_matching(rng: &mut ChaCha8Rng, size: u64) -> Perm {
    let mut pts: Vec<u64> = (0..size).collect();
    pts.shuffle(rng);
    let mut table: Vec<u64> = (0..size).collect();
    for pair in pts.chunks(2).take(size as usize / 3) {
        if let [a, b] = pair {
            table[*a as usize] = *b;
            table[*b as usize] = *a;
        }
    }
    Perm::from_table(&table).unwrap()
}

fn moved(p: &Perm, limit: u64) -> Vec<u64> {
    (0..limit).filter(|&x| p.at(x) != n(x)).collect()
}

#[test]
fn composition_inverse_and_powers() {
    let f = Perm::from_table(&[3, 0, 4, 1, 2]).unwrap();
    Perm::identity().compose(&f).agrees_with(&f, prefix(100)).unwrap();
    f.power(0).check_stationary(prefix(100)).unwrap();
    let t = Perm::transposition(0, 1);
    t.inverse().agrees_with(&t, prefix(100)).unwrap();
    f.power(-2).compose(&f.power(2)).check_stationary(prefix(100)).unwrap();
    assert_eq!(f.compose(&f).at(0), f.power(2).at(0));
}

#[test]
fn p_f_rules() {
    let id: NatMap = Arc::new(|x: &Nat| x.clone());
    let p = p_f(id);
    assert_eq!(p.apply(&c3u(0, 1, 0)), c3u(0, 1, 0));
    assert_eq!(p.at(0), n(0));
    for f in [
        Arc::new(|x: &Nat| x * x) as NatMap,
        Arc::new(|_: &Nat| Nat::from(7u64)),
        Arc::new(|x: &Nat| x >> 1),
    ] {
        p_f(f).check_bijective(N).unwrap();
    }
}

#[test]
fn named_matchings() {
    for x in 0..20u64 {
        for y in 0..20u64 {
            assert_eq!(px().apply(&c3u(x, y, 0)), c3u(x, y, x + 2));
            assert_eq!(px().apply(&c3u(x, y, x + 2)), c3u(x, y, 0));
        }
    }
    del().check_involution(10_000).unwrap();
    assert_eq!(s_ij(0, 1).unwrap().at(8), n(9));
    assert!(s_ij(2, 2).is_err());
    let half: PartialFn = Arc::new(|x: &Nat, y: &Nat| (!y.bit(0)).then(|| x + y));
    let named = [
        code_of(half),
        px(),
        del(),
        s_ij(0, 3).unwrap(),
        s_ij(1, 2).unwrap(),
        move_perm(),
        place(),
        swap1(),
        swap2(),
    ];
    for p in &named {
        p.check_bijective(N).unwrap();
    }
    for p in &named[..5] {
        p.check_involution(N).unwrap();
    }
}

#[test]
fn delete_combinator_cases() {
    let (f1, f2) = (Perm::transposition(0, 1), Perm::transposition(0, 2));
    let in_a = |x: &Nat| x.is_zero();
    check_delete_preconditions(&f1, &f2, &in_a, prefix(50)).unwrap();
    delete_combinator(&f1, &f2).agrees_with(&f1, prefix(50)).unwrap();

    let none = |_: &Nat| false;
    check_delete_preconditions(&Perm::transposition(3, 4), &Perm::identity(), &none, prefix(50)).unwrap();
    delete_combinator(&Perm::transposition(3, 4), &Perm::identity()).check_stationary(prefix(50)).unwrap();

    assert!(check_delete_preconditions(&f2, &f2, &in_a, prefix(50)).is_err());
}

#[test]
fn delete_odd_keeps_even_cells() {
    let d = delete_odd(&px());
    d.check_bijective(N).unwrap();
    for x in 0..12u64 {
        for y in 0..12u64 {
            for z in 0..16u64 {
                let want = match (y % 2, z) {
                    (0, 0) => c3u(x, y, x + 2),
                    (0, z) if z == x + 2 => c3u(x, y, 0),
                    _ => c3u(x, y, z),
                };
                assert_eq!(d.apply(&c3u(x, y, z)), want, "at ({x}, {y}, {z})");
            }
        }
    }
}

#[test]
fn unary_composition_codes() {
    let id: NatMap = Arc::new(|x: &Nat| x.clone());
    let flip: NatMap = Arc::new(|x: &Nat| x ^ 1u64);
    let swap01: NatMap = Arc::new(|x: &Nat| match x.to_u64() {
        Some(0) => n(1),
        Some(1) => n(0),
        _ => x.clone(),
    });
    assert!(unar_compose_code(&[]).is_err());
    let cases: [(Vec<NatMap>, fn(u64) -> u64); 3] = [
        (vec![id], |x| x),
        (vec![flip.clone(), flip], |x| x),
        (vec![swap01], |x| match x {
            0 => 1,
            1 => 0,
            x => x,
        }),
    ];
    for (fs, g) in cases {
        let code = unar_compose_code(&fs).unwrap();
        code.check_bijective(N).unwrap();
        for x in 0..16u64 {
            for y in (0..16u64).step_by(2) {
                assert_eq!(code.apply(&c3u(x, y, 0)), c3u(x, y, g(x) + 2));
            }
        }
    }
}

#[test]
fn even_pipeline() {
    let t01: NatMap = Arc::new(|x: &Nat| Perm::transposition(0, 1).apply(x));
    let out = even_matching_pipeline(&[t01]).unwrap();
    out.result.agrees_with(&Perm::transposition(0, 2), prefix(1000)).unwrap();
    for p in &out.psi {
        p.check_bijective(N).unwrap();
    }
    even_matching_pipeline(&[]).unwrap().result.check_stationary(prefix(1000)).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let f_half = random_matching(&mut rng, 8);
        let word: Vec<NatMap> = moved(&f_half, 8)
            .into_iter()
            .filter(|&x| f_half.at(x) > n(x))
            .map(|x| {
                let t = Perm::transposition(x, f_half.at(x).to_u64().unwrap());
                Arc::new(move |y: &Nat| t.apply(y)) as NatMap
            })
            .collect();
        let f = Perm::matching(move |x: &Nat| if x.bit(0) { x.clone() } else { f_half.apply(&(x >> 1)) << 1 });
        even_matching_pipeline(&word).unwrap().result.agrees_with(&f, prefix(1000)).unwrap();
    }
}

#[test]
fn regular_set_algebra() {
    let evens = RegularSet::arithmetic(2, 0).unwrap();
    let odds = RegularSet::arithmetic(2, 1).unwrap();
    let (a1, a2) = evens.split();
    for k in 0..100u64 {
        assert_eq!(a1.unrank(&n(k)), n(4 * k));
        assert_eq!(a2.unrank(&n(k)), n(4 * k + 2));
    }
    let all = RegularSet::union(&evens, &odds);
    for k in 0..200u64 {
        assert_eq!(all.unrank(&n(k)), n(k));
    }
    let bands = BandFactory::new(default_growth(2));
    let [r1, ..] = bands.sets().unwrap();
    assert!(r1.contains(&n(0)));
    for set in small_bands().sets().unwrap().iter().chain([&a1, &a2]) {
        set.check(400).unwrap();
        for k in 0..399u64 {
            assert!(set.unrank(&n(k)) < set.unrank(&n(k + 1)));
        }
    }
}

#[test]
fn stationary_halves() {
    let bands = small_bands();
    let [r1, r2, ..] = bands.sets().unwrap();
    let (f1, f2) = stationary_decompose(&Perm::identity(), &r1, &r2);
    f1.check_stationary(prefix(N)).unwrap();
    f2.check_stationary(prefix(N)).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (_, b2) = r2.split();
    for _ in 0..3 {
        let f = random_band_perm(&mut rng, &bands, 64).unwrap();
        check_separating_sets(&f, &r1, &r2, prefix(N)).unwrap();
        let (f1, f2) = stationary_decompose(&f, &r1, &r2);
        f1.check_bijective(N).unwrap();
        f2.check_bijective(N).unwrap();
        f1.compose(&f2).agrees_with(&f, prefix(N)).unwrap();
        for x in prefix(N) {
            if b2.contains(&x) {
                assert_eq!(f1.apply(&x), x);
            }
            if r1.contains(&x) {
                assert_eq!(f2.apply(&x), x);
            }
        }
    }
}

#[test]
fn stationary_pairs() {
    let evens = RegularSet::arithmetic(2, 0).unwrap();
    let odds = RegularSet::arithmetic(2, 1).unwrap();
    let pair = stationary_to_triples(&Perm::identity(), &odds, &evens);
    pair.product().check_stationary(prefix(1000)).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..3 {
        let mut half: Vec<u64> = (0..20).collect();
        half.shuffle(&mut rng);
        let table: Vec<u64> = (0..40).map(|x| if x % 2 == 0 { 2 * half[x as usize / 2] } else { x }).collect();
        let f = Perm::from_table(&table).unwrap();
        let pair = stationary_to_triples(&f, &odds, &evens);
        pair.product().agrees_with(&f, prefix(1000)).unwrap();
        for p in [&pair.r1, &pair.r2, &pair.h1, &pair.h2, &pair.s1, &pair.s2] {
            p.check_bijective(N).unwrap();
            p.check_involution(N).unwrap();
        }
        for t in pair.triples() {
            t.check(prefix(N)).unwrap();
            for b in t.tuples(prefix(N)) {
                for i in 0..4 {
                    for j in i + 1..4 {
                        assert_ne!(b[i], b[j]);
                    }
                }
            }
        }
    }
}

#[test]
fn matchings_over_fewer_parts() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for parts_n in [3u64, 4] {
        let parts: Vec<RegularSet> = (0..parts_n).map(|r| RegularSet::arithmetic(parts_n, r).unwrap()).collect();
        let f = random_matching(&mut rng, 60);
        let [a, b, c] = [&parts[0], &parts[1], &parts[2]];
        if parts_n == 3 {
            let factors = three_two(&f, a, b, c);
            Perm::compose_all(&factors).agrees_with(&f, prefix(N)).unwrap();
        }
        let factors = sequence(&f, &parts).unwrap();
        assert_eq!(factors.len() as u64, 5u64.pow(parts_n as u32 - 2));
        let product = Perm::compose_all(&factors.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>());
        product.agrees_with(&f, prefix(N)).unwrap();
        for (i, p) in &factors {
            p.check_involution(512).unwrap();
            for x in moved(p, 512) {
                let r = x % parts_n;
                assert!(r == *i as u64 || r == *i as u64 + 1, "factor over parts {i}, {} moves {x}", i + 1);
            }
        }
    }
}

#[test]
fn megadelete_on_one_tuple() {
    let f1 = Perm::from_table(&[1, 0, 3, 2]).unwrap();
    let f2 = Perm::transposition(0, 2);
    let want = Perm::from_table(&[2, 3, 0, 1]).unwrap();
    megadelete(&f1, &f2).agrees_with(&want, prefix(50)).unwrap();
}

fn finite_triple(base: u64) -> CorrectTriple {
    let f = Perm::transposition(base, base + 2).compose(&Perm::transposition(base + 1, base + 3));
    CorrectTriple { f, g: Perm::transposition(base, base + 1) }
}

#[test]
fn rol_and_all_assemble_every_w() {
    let rol = rol_power(8, 1);
    assert_eq!(rol.at(7), n(0));
    assert_eq!(rol.at(12), n(13));

    let odds = RegularSet::arithmetic(2, 1).unwrap();
    let evens = RegularSet::arithmetic(2, 0).unwrap();
    let f = Perm::from_table(&[6, 1, 0, 3, 4, 5, 2]).unwrap();
    let pair_triples = stationary_to_triples(&f, &odds, &evens).triples();
    let sets: [Vec<CorrectTriple>; 3] = [
        vec![finite_triple(0)],
        vec![finite_triple(4), pair_triples[0].clone()],
        vec![pair_triples[2].clone(), pair_triples[3].clone()],
    ];
    for triples in sets {
        for t in &triples {
            t.check(prefix(1000)).unwrap();
        }
        let g = TwoGenerators::new(triples).unwrap();
        let limit = g.modulus() * 64;
        g.rol().check_bijective(limit).unwrap();
        g.all().check_involution(limit).unwrap();
        g.all().agrees_with(&g.all_as_product(), prefix(limit)).unwrap();
        for i in 1..=g.n() {
            let word = g.w_word(i);
            assert_eq!(word.0.len(), 12);
            g.eval(&word).agrees_with(&g.w_direct(i), prefix(limit)).unwrap();
        }
        let mut classes = vec![0u64; g.modulus() as usize];
        for x in 0..limit {
            classes[(x % g.modulus()) as usize] += 1;
        }
        assert!(classes.iter().all(|&c| c == 64));
    }
}

#[test]
fn random_permutation_from_two_generators() {
    let bands = small_bands();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let f = random_band_perm(&mut rng, &bands, 64).unwrap();
    let r = reassemble(&f, &bands).unwrap();
    assert_eq!(r.generators.n(), 8);
    let pts: Vec<Nat> = prefix(N).collect();
    r.check(&bands, &pts).unwrap();

    let mut broken = r.clone();
    broken.word.0.truncate(broken.word.0.len() - 12);
    assert!(broken.check(&bands, &pts).is_err());
}
