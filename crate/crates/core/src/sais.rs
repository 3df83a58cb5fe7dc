//! Suffix array construction by induced sorting (SA-IS) over an integer
//! alphabet `0..=upper`. Linear time; recursion on the reduced LMS string.

const EMPTY: usize = usize::MAX;

/// Suffix array of `s`, whose symbols must all be `<= upper`.
pub fn suffix_array(s: &[u32], upper: u32) -> Vec<usize> {
    debug_assert!(s.iter().all(|&c| c <= upper));
    let s: Vec<usize> = s.iter().map(|&c| c as usize).collect();
    sa_is(&s, upper as usize)
}

fn sa_is(s: &[usize], upper: usize) -> Vec<usize> {
    let n = s.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ => {}
    }

    // ls[i]: suffix i is S-type (smaller than suffix i + 1)
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] {
            ls[i + 1]
        } else {
            s[i] < s[i + 1]
        };
    }

    // bucket starts: sum_l[c] for L-type, sum_s[c] for S-type
    let mut sum_l = vec![0usize; upper + 1];
    let mut sum_s = vec![0usize; upper + 1];
    for i in 0..n {
        if !ls[i] {
            sum_s[s[i]] += 1;
        } else {
            sum_l[s[i] + 1] += 1;
        }
    }
    for c in 0..=upper {
        sum_s[c] += sum_l[c];
        if c < upper {
            sum_l[c + 1] += sum_s[c];
        }
    }

    let buckets = Buckets {
        s,
        ls: &ls,
        sum_l: &sum_l,
        sum_s: &sum_s,
    };

    let mut lms_map = vec![EMPTY; n + 1];
    let mut lms = Vec::new();
    for i in 1..n {
        if !ls[i - 1] && ls[i] {
            lms_map[i] = lms.len();
            lms.push(i);
        }
    }

    let mut sa = vec![EMPTY; n];
    buckets.induce(&lms, &mut sa);

    let m = lms.len();
    if m > 0 {
        let sorted_lms: Vec<usize> = sa
            .iter()
            .copied()
            .filter(|&v| v != EMPTY && lms_map[v] != EMPTY)
            .collect();
        let mut rec_s = vec![0usize; m];
        let mut rec_upper = 0;
        rec_s[lms_map[sorted_lms[0]]] = 0;
        for i in 1..m {
            let mut l = sorted_lms[i - 1];
            let mut r = sorted_lms[i];
            let end_l = if lms_map[l] + 1 < m { lms[lms_map[l] + 1] } else { n };
            let end_r = if lms_map[r] + 1 < m { lms[lms_map[r] + 1] } else { n };
            let mut same = true;
            if end_l - l != end_r - r {
                same = false;
            } else {
                while l < end_l {
                    if s[l] != s[r] {
                        break;
                    }
                    l += 1;
                    r += 1;
                }
                if l == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec_s[lms_map[sorted_lms[i]]] = rec_upper;
        }

        let rec_sa = sa_is(&rec_s, rec_upper);
        let sorted_lms: Vec<usize> = rec_sa.iter().map(|&i| lms[i]).collect();
        buckets.induce(&sorted_lms, &mut sa);
    }
    sa
}

struct Buckets<'a> {
    s: &'a [usize],
    ls: &'a [bool],
    sum_l: &'a [usize],
    sum_s: &'a [usize],
}

impl Buckets<'_> {
    fn induce(&self, lms: &[usize], sa: &mut [usize]) {
        let (s, ls) = (self.s, self.ls);
        let n = s.len();
        sa.fill(EMPTY);

        let mut buf = self.sum_s.to_vec();
        for &d in lms {
            if d == n {
                continue;
            }
            sa[buf[s[d]]] = d;
            buf[s[d]] += 1;
        }

        buf.copy_from_slice(self.sum_l);
        sa[buf[s[n - 1]]] = n - 1;
        buf[s[n - 1]] += 1;
        for i in 0..n {
            let v = sa[i];
            if v != EMPTY && v >= 1 && !ls[v - 1] {
                sa[buf[s[v - 1]]] = v - 1;
                buf[s[v - 1]] += 1;
            }
        }

        buf.copy_from_slice(self.sum_l);
        for i in (0..n).rev() {
            let v = sa[i];
            if v != EMPTY && v >= 1 && ls[v - 1] {
                buf[s[v - 1] + 1] -= 1;
                sa[buf[s[v - 1] + 1]] = v - 1;
            }
        }
    }
}
