//! A brute-force reference interpreter written from the opcode table alone.
//! Floating point, no aux input, nothing shared with the library.
#![allow(dead_code)]

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Op {
    Rot(usize),
    Not(usize),
    Cnot(usize, usize),
    Aux,
    Halt,
}

pub struct Oracle {
    pub w: usize,
    pub n: usize,
}

pub fn bitstrings(len: usize) -> impl Iterator<Item = String> {
    (0..1u64 << len).map(move |v| {
        (0..len)
            .map(|i| {
                if v >> (len - 1 - i) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    })
}

impl Oracle {
    pub fn new(w: usize, n: usize) -> Self {
        Self { w, n }
    }

    fn operand_width(&self) -> usize {
        let mut b = 0;
        while (1usize << b) < self.w {
            b += 1;
        }
        b
    }

    pub fn decode(&self, bits: &str) -> Option<Vec<Op>> {
        let b = bits.as_bytes();
        let mut pos = 0;
        let mut ops = Vec::new();
        let ow = self.operand_width();
        let operand = |pos: &mut usize| -> Option<usize> {
            if *pos + ow > b.len() {
                return None;
            }
            let mut v = 0;
            for &c in &b[*pos..*pos + ow] {
                v = 2 * v + (c - b'0') as usize;
            }
            *pos += ow;
            (v < self.w).then_some(v)
        };
        let starts = |pos: usize, p: &str| {
            b.len() >= pos + p.len() && &b[pos..pos + p.len()] == p.as_bytes()
        };
        loop {
            if starts(pos, "0") {
                pos += 1;
                ops.push(Op::Rot(operand(&mut pos)?));
            } else if starts(pos, "10") {
                pos += 2;
                ops.push(Op::Not(operand(&mut pos)?));
            } else if starts(pos, "110") {
                pos += 3;
                let c = operand(&mut pos)?;
                let t = operand(&mut pos)?;
                if c == t {
                    return None;
                }
                ops.push(Op::Cnot(c, t));
            } else if starts(pos, "11100") {
                pos += 5;
                operand(&mut pos)?;
                ops.push(Op::Aux);
            } else if starts(pos, "11101") {
                pos += 5;
                ops.push(Op::Aux);
            } else if starts(pos, "1111") {
                ops.push(Op::Halt);
                return (pos + 4 == b.len()).then_some(ops);
            } else {
                return None;
            }
        }
    }

    /// The output amplitudes of a halting program, or `None`.
    pub fn run(&self, bits: &str) -> Option<Vec<f64>> {
        let ops = self.decode(bits)?;
        let dim = 1usize << self.w;
        let mut s = vec![0.0; dim];
        s[0] = 1.0;
        let mask = |q: usize| 1usize << (self.w - 1 - q);
        for op in ops {
            match op {
                Op::Rot(q) => {
                    let m = mask(q);
                    for i in 0..dim {
                        if i & m == 0 {
                            let (a, b) = (s[i], s[i | m]);
                            s[i] = 0.6 * a - 0.8 * b;
                            s[i | m] = 0.8 * a + 0.6 * b;
                        }
                    }
                }
                Op::Not(q) => {
                    let m = mask(q);
                    for i in 0..dim {
                        if i & m == 0 {
                            s.swap(i, i | m);
                        }
                    }
                }
                Op::Cnot(c, t) => {
                    let (mc, mt) = (mask(c), mask(t));
                    for i in 0..dim {
                        if i & mc != 0 && i & mt == 0 {
                            s.swap(i, i | mt);
                        }
                    }
                }
                Op::Aux => return None,
                Op::Halt => break,
            }
        }
        self.factor(&s)
    }

    fn factor(&self, s: &[f64]) -> Option<Vec<f64>> {
        let rows = 1usize << self.n;
        let cols = 1usize << (self.w - self.n);
        let col = |j: usize| (0..rows).map(|i| s[i * cols + j]).collect::<Vec<_>>();
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
        let best = (0..cols).max_by(|&a, &b| norm(&col(a)).total_cmp(&norm(&col(b))))?;
        let c = col(best);
        let nc = norm(&c).sqrt();
        let out: Vec<f64> = c.iter().map(|x| x / nc).collect();
        for j in 0..cols {
            let v = col(j);
            let dot: f64 = v.iter().zip(&out).map(|(a, b)| a * b).sum();
            if (dot * dot - norm(&v)).abs() > 1e-9 {
                return None;
            }
        }
        Some(out)
    }

    /// Every halting program of length at most `max_len` with its output.
    pub fn halting(&self, max_len: usize) -> Vec<(String, Vec<f64>)> {
        (0..=max_len)
            .flat_map(bitstrings)
            .filter_map(|p| self.run(&p).map(|o| (p, o)))
            .collect()
    }

    /// `min l(p) + ⌈−log₂ fidelity⌉` over programs of length at most `max_len`.
    pub fn complexity(&self, target: &[f64], max_len: usize) -> Option<u64> {
        self.halting(max_len)
            .into_iter()
            .filter_map(|(p, o)| {
                let dot: f64 = o.iter().zip(target).map(|(a, b)| a * b).sum();
                let f = dot * dot;
                (f > 1e-12).then(|| p.len() as u64 + (-f.log2() - 1e-9).ceil().max(0.0) as u64)
            })
            .min()
    }
}
