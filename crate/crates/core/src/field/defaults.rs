use super::zp_poly;

// Conway-style primitive polynomials, lowest coefficient first, each checked
// irreducible and primitive.
const TABLE: &[(u32, u32, &[u32])] = &[
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
    (11, 1, &[9, 1]),
    (11, 2, &[2, 7, 1]),
    (11, 3, &[9, 2, 0, 1]),
    (11, 4, &[2, 10, 8, 0, 1]),
    (13, 1, &[11, 1]),
    (13, 2, &[2, 12, 1]),
    (13, 3, &[11, 2, 0, 1]),
    (13, 4, &[2, 12, 3, 0, 1]),
];

/// The built-in modulus for F_{p^r}.
///
/// Pairs outside the table fall back to the monic irreducible polynomial of
/// degree r whose lower coefficients, read as a base-p number with `c_0`
/// least significant, are smallest. Callers must pass an odd prime `p` and
/// `r >= 1`.
pub fn default_modulus(p: u32, r: u32) -> Vec<u32> {
    if let Some((_, _, m)) = TABLE.iter().find(|(tp, tr, _)| *tp == p && *tr == r) {
        return m.to_vec();
    }
    let r = r as usize;
    let mut lower = vec![0u32; r];
    loop {
        let mut cand = lower.clone();
        cand.push(1);
        if cand[0] != 0 && zp_poly::is_irreducible(&cand, p) {
            return cand;
        }
        // increment base-p counter
        let mut i = 0;
        loop {
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
            assert!(i < r, "no irreducible polynomial found");
        }
    }
}
