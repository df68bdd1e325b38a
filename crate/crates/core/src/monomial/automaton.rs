use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::series::TruncSeries;

/// Aho–Corasick automaton whose dead states mark an occurrence of a forbidden word.
#[derive(Clone, Debug)]
pub struct AvoidanceAutomaton {
    goto: Vec<Vec<usize>>,
    dead: Vec<bool>,
}

impl AvoidanceAutomaton {
    pub fn new(letters: usize, words: &[Vec<usize>]) -> Self {
        let mut goto: Vec<Vec<Option<usize>>> = vec![vec![None; letters]];
        let mut dead = vec![false];
        for w in words {
            let mut s = 0;
            for &a in w {
                s = match goto[s][a] {
                    Some(t) => t,
                    None => {
                        goto.push(vec![None; letters]);
                        dead.push(false);
                        let t = goto.len() - 1;
                        goto[s][a] = Some(t);
                        t
                    }
                };
            }
            dead[s] = true;
        }

        let mut full = vec![vec![0; letters]; goto.len()];
        let mut fail = vec![0; goto.len()];
        let mut queue = VecDeque::new();
        for a in 0..letters {
            match goto[0][a] {
                Some(t) => {
                    full[0][a] = t;
                    queue.push_back(t);
                }
                None => full[0][a] = 0,
            }
        }
        while let Some(s) = queue.pop_front() {
            dead[s] = dead[s] || dead[fail[s]];
            for a in 0..letters {
                match goto[s][a] {
                    Some(t) => {
                        fail[t] = full[fail[s]][a];
                        full[s][a] = t;
                        queue.push_back(t);
                    }
                    None => full[s][a] = full[fail[s]][a],
                }
            }
        }
        Self { goto: full, dead }
    }

    pub fn num_states(&self) -> usize {
        self.goto.len()
    }

    pub fn step(&self, state: usize, letter: usize) -> usize {
        self.goto[state][letter]
    }

    pub fn is_dead(&self, state: usize) -> bool {
        self.dead[state]
    }

    /// Whether `word` contains none of the forbidden words.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut s = 0;
        for &a in word {
            s = self.step(s, a);
            if self.dead[s] {
                return false;
            }
        }
        true
    }

    /// Number of surviving words of each weight, a letter of degree `m`
    /// contributing `t^m`.
    pub fn count_by_weight(&self, degrees: &[usize], order: usize) -> TruncSeries {
        let states = self.num_states();
        let mut f = vec![vec![BigInt::zero(); states]; order + 1];
        f[0][0] = BigInt::from(1);
        for r in 1..=order {
            let (done, rest) = f.split_at_mut(r);
            let row = &mut rest[0];
            for (a, &m) in degrees.iter().enumerate() {
                if m > r {
                    continue;
                }
                for (s, count) in done[r - m].iter().enumerate() {
                    if count.is_zero() || self.dead[s] {
                        continue;
                    }
                    let t = self.goto[s][a];
                    if !self.dead[t] {
                        row[t] += count;
                    }
                }
            }
        }
        TruncSeries::new(f.into_iter().map(|row| row.into_iter().sum()).collect())
    }
}
