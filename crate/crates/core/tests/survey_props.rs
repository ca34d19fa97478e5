use bridgegap::survey::{homophily_distribution, load_survey, SurveyError, SurveyRecord};
use proptest::prelude::*;

fn record(own: u8, friends: [u8; 4]) -> SurveyRecord {
    SurveyRecord {
        subject_id: "s".into(),
        own_group: format!("g{own}"),
        friend_groups: friends.map(|f| format!("g{f}")),
    }
}

proptest! {
    #[test]
    fn order_does_not_matter(rows in proptest::collection::vec((0u8..3, [0u8..3, 0u8..3, 0u8..3, 0u8..3]), 1..200), seed: u64) {
        let records: Vec<_> = rows.iter().map(|&(o, f)| record(o, f)).collect();
        let mut shuffled = records.clone();
        let n = shuffled.len();
        // Deterministic Fisher-Yates driven by the seed.
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            shuffled.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let a = homophily_distribution(&records).unwrap();
        prop_assert_eq!(&a, &homophily_distribution(&shuffled).unwrap());

        prop_assert_eq!(a.counts.iter().sum::<usize>(), a.total);
        for k in 0..5 {
            let exact = 100.0 * a.counts[k] as f64 / a.total as f64;
            prop_assert!((a.percentage(k) - exact).abs() <= 0.05 + 1e-9);
        }
        let sum: f64 = (0..5).map(|k| a.percentage(k)).sum();
        prop_assert!((sum - 100.0).abs() <= 0.25 + 1e-9);
    }
}

#[test]
fn loads_from_disk_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    std::fs::write(&path, "subject_id,own_group,f1,f2,f3,f4\ns1,A,A,B,A,A\ns2,A,B\n").unwrap();
    assert!(matches!(
        load_survey(&path),
        Err(SurveyError::BadRowArity { line: 3, found: 3 })
    ));
    std::fs::write(&path, "subject_id,own_group,f1,f2,f3,f4\ns1,A,A,B,A,A\n").unwrap();
    let recs = load_survey(&path).unwrap();
    assert_eq!(recs[0].same_group_ties(), 3);
}
