//! Clause, T-unit and phrase counts from universal dependencies.
//!
//! Rule table (all relation labels compared without subtype):
//!
//! | unit | rule |
//! |------|------|
//! | W  | tokens whose UPOS is not PUNCT |
//! | S  | sentences |
//! | C  | finite predicate heads: VERB, a word with a `cop` dependent, or an AUX that is not itself `aux`/`cop`; finite when it or an AUX/`aux`/`cop` dependent has `VerbForm=Fin` |
//! | DC | clause heads attached as `csubj`, `ccomp`, `advcl`, `acl`, or having a `mark` dependent; clauses conjoined to a DC |
//! | T  | non-dependent clause heads that are the root, or `conj`/`parataxis` dependents of the root or of another T head |
//! | CT | T-units whose span (subtree minus other T-units) holds a DC |
//! | VP | VERB tokens plus non-verbal predicates with a `cop` dependent |
//! | CP | `conj` dependents that are not clause heads, under NOUN, PROPN, ADJ, ADV or VERB |
//! | CN | NOUN/PROPN with an `amod`, `nmod`, `acl`, `appos` or `nummod` dependent |

use serde::{Deserialize, Serialize};

use super::{AnnotatedDoc, AnnotatedSentence};

const DEPENDENT_CLAUSE_RELS: &[&str] = &["csubj", "ccomp", "advcl", "acl"];
const COMPLEX_NOMINAL_RELS: &[&str] = &["amod", "nmod", "acl", "appos", "nummod"];
const COORDINABLE_UPOS: &[&str] = &["NOUN", "PROPN", "ADJ", "ADV", "VERB"];

/// The nine L2SCA-style counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct SyntacticCounts {
    pub w: usize,
    pub s: usize,
    pub vp: usize,
    pub c: usize,
    pub t: usize,
    pub dc: usize,
    pub ct: usize,
    pub cp: usize,
    pub cn: usize,
}

impl SyntacticCounts {
    pub fn named(&self) -> Vec<(&'static str, Option<f64>)> {
        [
            ("W", self.w),
            ("S", self.s),
            ("VP", self.vp),
            ("C", self.c),
            ("T", self.t),
            ("DC", self.dc),
            ("CT", self.ct),
            ("CP", self.cp),
            ("CN", self.cn),
        ]
        .into_iter()
        .map(|(k, v)| (k, Some(v as f64)))
        .collect()
    }

    fn add(&mut self, other: &SyntacticCounts) {
        self.w += other.w;
        self.s += other.s;
        self.vp += other.vp;
        self.c += other.c;
        self.t += other.t;
        self.dc += other.dc;
        self.ct += other.ct;
        self.cp += other.cp;
        self.cn += other.cn;
    }
}

/// Per-token clause roles of one sentence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClauseRoles {
    pub clause_head: Vec<bool>,
    pub dependent: Vec<bool>,
    pub t_unit_head: Vec<bool>,
    pub complex_t_unit: Vec<bool>,
}

impl ClauseRoles {
    pub fn of(sentence: &AnnotatedSentence) -> Self {
        let tokens = &sentence.tokens;
        let n = tokens.len();
        let children = sentence.children();

        let clause_head: Vec<bool> = (0..n)
            .map(|i| {
                let t = &tokens[i];
                if matches!(t.base_deprel(), "aux" | "cop") {
                    return false;
                }
                let has_cop = children[i].iter().any(|&c| tokens[c].base_deprel() == "cop");
                let predicate = t.upos == "VERB" || has_cop || t.upos == "AUX";
                let finite = t.feat("VerbForm") == Some("Fin")
                    || children[i].iter().any(|&c| {
                        let ch = &tokens[c];
                        (ch.upos == "AUX" || matches!(ch.base_deprel(), "aux" | "cop"))
                            && ch.feat("VerbForm") == Some("Fin")
                    });
                predicate && finite
            })
            .collect();

        let mut dependent: Vec<Option<bool>> = vec![None; n];
        fn is_dependent(
            i: usize,
            sentence: &AnnotatedSentence,
            children: &[Vec<usize>],
            clause_head: &[bool],
            memo: &mut [Option<bool>],
        ) -> bool {
            if let Some(v) = memo[i] {
                return v;
            }
            let t = &sentence.tokens[i];
            let v = clause_head[i]
                && (DEPENDENT_CLAUSE_RELS.contains(&t.base_deprel())
                    || children[i].iter().any(|&c| sentence.tokens[c].base_deprel() == "mark")
                    || (t.base_deprel() == "conj"
                        && t.head > 0
                        && is_dependent(t.head - 1, sentence, children, clause_head, memo)));
            memo[i] = Some(v);
            v
        }
        for i in 0..n {
            is_dependent(i, sentence, &children, &clause_head, &mut dependent);
        }
        let dependent: Vec<bool> = dependent.into_iter().map(|v| v.unwrap_or(false)).collect();

        let mut t_memo: Vec<Option<bool>> = vec![None; n];
        fn is_t_head(
            i: usize,
            sentence: &AnnotatedSentence,
            clause_head: &[bool],
            dependent: &[bool],
            memo: &mut [Option<bool>],
        ) -> bool {
            if let Some(v) = memo[i] {
                return v;
            }
            let t = &sentence.tokens[i];
            let v = clause_head[i]
                && !dependent[i]
                && (t.head == 0
                    || (matches!(t.base_deprel(), "conj" | "parataxis")
                        && (sentence.tokens[t.head - 1].head == 0
                            || is_t_head(t.head - 1, sentence, clause_head, dependent, memo))));
            memo[i] = Some(v);
            v
        }
        for i in 0..n {
            is_t_head(i, sentence, &clause_head, &dependent, &mut t_memo);
        }
        let t_unit_head: Vec<bool> = t_memo.into_iter().map(|v| v.unwrap_or(false)).collect();

        let mut complex_t_unit = vec![false; n];
        for i in (0..n).filter(|&i| dependent[i]) {
            let mut cur = tokens[i].head;
            while cur != 0 {
                if t_unit_head[cur - 1] {
                    complex_t_unit[cur - 1] = true;
                    break;
                }
                cur = tokens[cur - 1].head;
            }
        }

        ClauseRoles {
            clause_head,
            dependent,
            t_unit_head,
            complex_t_unit,
        }
    }
}

fn sentence_counts(sentence: &AnnotatedSentence) -> SyntacticCounts {
    let tokens = &sentence.tokens;
    let children = sentence.children();
    let roles = ClauseRoles::of(sentence);
    let count = |v: &[bool]| v.iter().filter(|&&b| b).count();

    let vp = (0..tokens.len())
        .filter(|&i| tokens[i].upos == "VERB" || children[i].iter().any(|&c| tokens[c].base_deprel() == "cop"))
        .count();
    let cp = (0..tokens.len())
        .filter(|&i| {
            let t = &tokens[i];
            t.base_deprel() == "conj"
                && t.head > 0
                && !roles.clause_head[i]
                && COORDINABLE_UPOS.contains(&tokens[t.head - 1].upos.as_str())
        })
        .count();
    let cn = (0..tokens.len())
        .filter(|&i| {
            matches!(tokens[i].upos.as_str(), "NOUN" | "PROPN")
                && children[i]
                    .iter()
                    .any(|&c| COMPLEX_NOMINAL_RELS.contains(&tokens[c].base_deprel()))
        })
        .count();

    SyntacticCounts {
        w: tokens.iter().filter(|t| !t.is_punct()).count(),
        s: 1,
        vp,
        c: count(&roles.clause_head),
        t: count(&roles.t_unit_head),
        dc: count(&roles.dependent),
        ct: count(&roles.complex_t_unit),
        cp,
        cn,
    }
}

/// Counts W, S, VP, C, T, DC, CT, CP and CN over a document.
pub fn clause_inventory(doc: &AnnotatedDoc) -> SyntacticCounts {
    let mut total = SyntacticCounts::default();
    for sentence in doc.sentences.iter().filter(|s| !s.tokens.is_empty()) {
        total.add(&sentence_counts(sentence));
    }
    debug_assert!(total.dc <= total.c && total.ct <= total.t);
    total
}

/// The fourteen ratio indices; `None` where the denominator is zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct SyntacticRatios {
    pub MLS: Option<f64>,
    pub MLT: Option<f64>,
    pub MLC: Option<f64>,
    pub C_S: Option<f64>,
    pub VP_T: Option<f64>,
    pub C_T: Option<f64>,
    pub DC_C: Option<f64>,
    pub DC_T: Option<f64>,
    pub T_S: Option<f64>,
    pub CT_T: Option<f64>,
    pub CP_T: Option<f64>,
    pub CP_C: Option<f64>,
    pub CN_T: Option<f64>,
    pub CN_C: Option<f64>,
}

impl SyntacticRatios {
    pub fn named(&self) -> Vec<(&'static str, Option<f64>)> {
        vec![
            ("MLS", self.MLS),
            ("MLT", self.MLT),
            ("MLC", self.MLC),
            ("C_S", self.C_S),
            ("VP_T", self.VP_T),
            ("C_T", self.C_T),
            ("DC_C", self.DC_C),
            ("DC_T", self.DC_T),
            ("T_S", self.T_S),
            ("CT_T", self.CT_T),
            ("CP_T", self.CP_T),
            ("CP_C", self.CP_C),
            ("CN_T", self.CN_T),
            ("CN_C", self.CN_C),
        ]
    }
}

pub fn syntactic_ratios(sc: &SyntacticCounts) -> SyntacticRatios {
    let r = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
    SyntacticRatios {
        MLS: r(sc.w, sc.s),
        MLT: r(sc.w, sc.t),
        MLC: r(sc.w, sc.c),
        C_S: r(sc.c, sc.s),
        VP_T: r(sc.vp, sc.t),
        C_T: r(sc.c, sc.t),
        DC_C: r(sc.dc, sc.c),
        DC_T: r(sc.dc, sc.t),
        T_S: r(sc.t, sc.s),
        CT_T: r(sc.ct, sc.t),
        CP_T: r(sc.cp, sc.t),
        CP_C: r(sc.cp, sc.c),
        CN_T: r(sc.cn, sc.t),
        CN_C: r(sc.cn, sc.c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_conllu;

    const BECAUSE: &str = "# newdoc id = b\n\
1\tI\tI\tPRON\t_\tCase=Nom\t2\tnsubj\t_\t_\n\
2\teat\teat\tVERB\t_\tMood=Ind|Tense=Pres|VerbForm=Fin\t0\troot\t_\t_\n\
3\tbecause\tbecause\tSCONJ\t_\t_\t6\tmark\t_\t_\n\
4\tI\tI\tPRON\t_\tCase=Nom\t6\tnsubj\t_\t_\n\
5\tam\tbe\tAUX\t_\tMood=Ind|Tense=Pres|VerbForm=Fin\t6\tcop\t_\t_\n\
6\thungry\thungry\tADJ\t_\tDegree=Pos\t2\tadvcl\t_\t_\n\
7\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\t_\n";

    #[test]
    fn because_clause() {
        let doc = &parse_conllu(BECAUSE).unwrap()[0];
        let sc = clause_inventory(doc);
        assert_eq!((sc.c, sc.dc, sc.t, sc.ct), (2, 1, 1, 1));
        assert_eq!((sc.w, sc.s, sc.vp), (6, 1, 2));
        let r = syntactic_ratios(&sc);
        assert_eq!(r.C_T, Some(2.0));
        assert_eq!(r.DC_T, Some(1.0));
    }

    #[test]
    fn empty_doc_is_all_zero() {
        let sc = clause_inventory(&AnnotatedDoc::default());
        assert_eq!(sc, SyntacticCounts::default());
        let r = syntactic_ratios(&sc);
        assert!(r.named().iter().all(|(_, v)| v.is_none()));
    }

    #[test]
    fn ratio_division() {
        let sc = SyntacticCounts {
            w: 10,
            s: 2,
            c: 4,
            t: 2,
            dc: 1,
            ..Default::default()
        };
        let r = syntactic_ratios(&sc);
        assert_eq!(r.MLS, Some(5.0));
        assert_eq!(r.C_T, Some(2.0));
        assert_eq!(r.DC_C, Some(0.25));
        let r = syntactic_ratios(&SyntacticCounts { t: 0, ..sc });
        for (name, v) in r.named() {
            if name.ends_with("_T") || name == "MLT" {
                assert!(v.is_none(), "{name}");
            }
        }
    }
}
