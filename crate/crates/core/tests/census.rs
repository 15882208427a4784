use stratifold::census::max_b;
use stratifold::{
    brute_force_census, census, constructive_census, count_b0, count_b1, reconcile, Engine, Error,
    DEFAULT_LIMIT,
};

#[test]
fn seven_white_vertices() {
    let r = reconcile(7, DEFAULT_LIMIT).unwrap();
    assert!(r.agrees(), "{:?}", r.disagreements);
    assert_eq!(r.grand_total, 167);
    let totals: Vec<u64> = (0..=3).map(|b| r.total_for(b)).collect();
    assert_eq!(totals, [48, 88, 29, 2]);

    let rows = |b| {
        r.rows_for(b)
            .map(|row| (row.descriptor.clone(), row.count))
            .collect::<Vec<_>>()
    };
    assert_eq!(
        rows(1),
        [
            ("S (4,2,1)".to_string(), 26),
            ("I (5,1,1)".to_string(), 35),
            ("I (3,2,2)".to_string(), 12),
            ("I (1,3,3)".to_string(), 15),
        ]
    );
    let b2: Vec<u64> = r.rows_for(2).map(|row| row.count).collect();
    assert_eq!(b2, [5, 4, 5, 3, 3, 5, 4]);
    assert_eq!(
        r.rows_for(2)
            .filter(|row| row.descriptor.contains("split"))
            .count(),
        2
    );
    let b3: Vec<u64> = r.rows_for(3).map(|row| row.count).collect();
    assert_eq!(b3, [1, 1]);
}

#[test]
fn b1_formula_matches_brute_force() {
    for n in 3..=8 {
        let brute = brute_force_census(n, DEFAULT_LIMIT).unwrap();
        assert_eq!(
            count_b1(n).unwrap().total(),
            brute[&1].len() as u64,
            "n = {n}"
        );
        assert_eq!(count_b0(n).unwrap(), brute[&0].len() as u64, "n = {n}");
    }
}

#[test]
fn constructive_and_brute_force_agree_as_sets() {
    for n in 1..=8 {
        let brute = brute_force_census(n, DEFAULT_LIMIT).unwrap();
        for b in 0..=3 {
            let constructed = constructive_census(n, b).unwrap();
            let expected = brute.get(&b).cloned().unwrap_or_default();
            assert_eq!(constructed, expected, "n = {n}, b = {b}");
        }
    }
}

#[test]
fn engines_are_deterministic() {
    let a = census(6, Engine::All, DEFAULT_LIMIT).unwrap();
    let b = census(6, Engine::All, DEFAULT_LIMIT).unwrap();
    assert_eq!(a, b);
    let codes = |n| brute_force_census(n, DEFAULT_LIMIT).unwrap();
    assert_eq!(codes(6), codes(6));
}

#[test]
fn single_engines() {
    let f = census(7, Engine::Formula, DEFAULT_LIMIT).unwrap();
    assert_eq!(f.total_for(0), 48);
    assert_eq!(f.total_for(1), 88);
    assert_eq!(f.total_for(2), 0);
    let c = census(7, Engine::Constructive, DEFAULT_LIMIT).unwrap();
    assert_eq!(c.total_for(2), 29);
    assert_eq!(c.grand_total, 167);
    // formulas need no enumeration, so the cap does not apply
    assert!(census(20, Engine::Formula, DEFAULT_LIMIT).is_ok());
    assert_eq!(
        census(9, Engine::Brute, DEFAULT_LIMIT),
        Err(Error::AboveLimit {
            n: 9,
            limit: DEFAULT_LIMIT
        })
    );
}

#[test]
fn small_cases() {
    assert_eq!(reconcile(1, DEFAULT_LIMIT).unwrap().grand_total, 1);
    let two = brute_force_census(2, DEFAULT_LIMIT).unwrap();
    assert_eq!(two[&0].len(), 1);
    assert!(two.keys().all(|&b| b == 0));
    assert_eq!(reconcile(3, DEFAULT_LIMIT).unwrap().grand_total, 3);
    assert_eq!(max_b(7), 3);
    assert_eq!(constructive_census(7, 2).unwrap().len(), 29);
    assert_eq!(constructive_census(7, 3).unwrap().len(), 2);
}
