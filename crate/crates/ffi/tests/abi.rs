use std::ffi::CStr;
use std::ptr;

use mea_ffi::*;

fn generate(n: u64, naive: u8) -> *mut MeaPermutation {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { mea_generate(n, naive, &mut p) }, MeaStatus::Ok);
    p
}

fn values(p: *const MeaPermutation) -> Vec<u64> {
    let len = unsafe { mea_permutation_len(p) };
    let mut buf = vec![0u64; len as usize];
    assert_eq!(
        unsafe { mea_permutation_values(p, buf.as_mut_ptr(), len) },
        MeaStatus::Ok
    );
    buf
}

fn last_error() -> String {
    let msg = mea_last_error_message();
    assert!(!msg.is_null());
    unsafe { CStr::from_ptr(msg) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn generate_and_read_back() {
    for naive in [0, 1] {
        let p = generate(7, naive);
        assert_eq!(values(p), [4, 1, 7, 3, 5, 2, 6]);
        unsafe { mea_permutation_free(p) };
    }
    let empty = generate(0, 0);
    assert_eq!(unsafe { mea_permutation_len(empty) }, 0);
    assert_eq!(
        unsafe { mea_permutation_values(empty, ptr::null_mut(), 0) },
        MeaStatus::Ok
    );
    unsafe { mea_permutation_free(empty) };
}

#[test]
fn statistics_through_the_abi() {
    let p = generate(5, 0);
    let mut inv = 0;
    assert_eq!(unsafe { mea_inversion_count(p, &mut inv) }, MeaStatus::Ok);
    assert_eq!(inv, 4);
    assert_eq!(mea_inversion_formula(5), 4);
    assert_eq!(unsafe { mea_sign(p) }, 1);
    assert_eq!(mea_sign_formula(7), -1);
    assert_eq!(mea_sign_formula(8), 1);

    let mut alt = MeaAlternation::Trivial;
    assert_eq!(
        unsafe { mea_classify_alternation(p, &mut alt) },
        MeaStatus::Ok
    );
    assert_eq!(alt, MeaAlternation::DownUp);

    let mut count = 0;
    let mut buf = [0u64; 4];
    assert_eq!(
        unsafe { mea_descent_set(p, buf.as_mut_ptr(), 4, &mut count) },
        MeaStatus::Ok
    );
    assert_eq!(&buf[..count as usize], &[1, 3]);
    assert_eq!(
        unsafe { mea_descent_set(p, buf.as_mut_ptr(), 1, &mut count) },
        MeaStatus::BufferTooSmall
    );
    assert_eq!(count, 2);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { mea_stats_json(p, &mut json) }, MeaStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { mea_string_free(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["values"], serde_json::json!([3, 1, 5, 2, 4]));
    assert_eq!(v["order"], "5");

    unsafe { mea_permutation_free(p) };
}

#[test]
fn inverses_agree() {
    for n in 1..=60 {
        let p = generate(n, 0);
        let mut positional = ptr::null_mut();
        let mut recursive = ptr::null_mut();
        unsafe {
            assert_eq!(mea_permutation_inverse(p, &mut positional), MeaStatus::Ok);
            assert_eq!(mea_inverse_recursive(n, &mut recursive), MeaStatus::Ok);
        }
        assert_eq!(values(positional), values(recursive), "n = {n}");
        unsafe {
            mea_permutation_free(p);
            mea_permutation_free(positional);
            mea_permutation_free(recursive);
        }
    }
}

#[test]
fn from_values_validates() {
    let mut p = ptr::null_mut();
    let good = [2u64, 3, 1, 4];
    assert_eq!(
        unsafe { mea_permutation_from_values(good.as_ptr(), 4, &mut p) },
        MeaStatus::Ok
    );
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { mea_permutation_inverse(p, &mut q) }, MeaStatus::Ok);
    assert_eq!(values(q), [3, 1, 2, 4]);
    unsafe {
        mea_permutation_free(p);
        mea_permutation_free(q);
    }

    let bad = [1u64, 1, 3];
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { mea_permutation_from_values(bad.as_ptr(), 3, &mut r) },
        MeaStatus::InvalidPermutation
    );
    assert!(r.is_null());
    assert!(last_error().contains("repeated"));
}

#[test]
fn decompose_struct() {
    let mut d = std::mem::MaybeUninit::<MeaDecomposition>::uninit();
    assert_eq!(unsafe { mea_decompose(8, d.as_mut_ptr()) }, MeaStatus::Ok);
    let d = unsafe { d.assume_init() };
    assert_eq!(d.odd, 0);
    assert_eq!(&d.prefix[..d.prefix_len as usize], &[4, 5, 1, 8]);
    assert_eq!(
        (d.child_n, d.threshold, d.low_offset, d.high_offset),
        (4, 2, 1, 3)
    );

    let mut d = std::mem::MaybeUninit::<MeaDecomposition>::uninit();
    assert_eq!(
        unsafe { mea_decompose(1, d.as_mut_ptr()) },
        MeaStatus::SizeTooSmall
    );
    assert!(last_error().contains("too small"));
}

#[test]
fn verify_summary_and_errors() {
    let mut s = MeaVerifySummary::default();
    assert_eq!(
        unsafe { mea_verify_range(1, 40, 20, &mut s) },
        MeaStatus::Ok
    );
    assert_eq!(s.failed, 0);
    // 10 claims for each of 40 sizes, simulator check only up to 20.
    assert_eq!(s.passed, 9 * 40 + 20);
    assert_eq!(
        unsafe { mea_verify_range(5, 1, 1, &mut s) },
        MeaStatus::InvalidRange
    );
}

#[test]
fn null_pointers_are_reported() {
    assert_eq!(
        unsafe { mea_generate(3, 0, ptr::null_mut()) },
        MeaStatus::NullPointer
    );
    assert!(last_error().contains("out"));
    let mut inv = 0;
    assert_eq!(
        unsafe { mea_inversion_count(ptr::null(), &mut inv) },
        MeaStatus::NullPointer
    );
    assert_eq!(unsafe { mea_permutation_len(ptr::null()) }, 0);
    assert_eq!(unsafe { mea_sign(ptr::null()) }, 0);
    unsafe {
        mea_permutation_free(ptr::null_mut());
        mea_string_free(ptr::null_mut());
    }
}

#[test]
fn success_clears_last_error() {
    assert_eq!(
        unsafe { mea_generate(3, 0, ptr::null_mut()) },
        MeaStatus::NullPointer
    );
    let p = generate(3, 0);
    assert!(mea_last_error_message().is_null());
    unsafe { mea_permutation_free(p) };
}
