//! Hand-annotated sentences with their expected syntactic counts.
//!
//! Each token is written `form UPOS FEATS HEAD DEPREL`; tokens are separated
//! by `|`. Expected counts are in the order W, S, VP, C, T, DC, CT, CP, CN.

pub struct SyntaxFixture {
    pub name: &'static str,
    pub tokens: &'static str,
    pub expected: [usize; 9],
}

pub const SYNTAX_FIXTURES: &[SyntaxFixture] = &[
    SyntaxFixture {
        name: "simple intransitive",
        tokens: "Dogs NOUN _ 2 nsubj | bark VERB VerbForm=Fin 0 root | . PUNCT _ 2 punct",
        expected: [2, 1, 1, 1, 1, 0, 0, 0, 0],
    },
    SyntaxFixture {
        name: "adverbial clause with copula",
        tokens: "I PRON _ 2 nsubj | eat VERB VerbForm=Fin 0 root | because SCONJ _ 6 mark | I PRON _ 6 nsubj \
                 | am AUX VerbForm=Fin 6 cop | hungry ADJ _ 2 advcl | . PUNCT _ 2 punct",
        expected: [6, 1, 2, 2, 1, 1, 1, 0, 0],
    },
    SyntaxFixture {
        name: "clausal complement",
        tokens: "She PRON _ 2 nsubj | said VERB VerbForm=Fin 0 root | that SCONJ _ 5 mark | he PRON _ 5 nsubj \
                 | left VERB VerbForm=Fin 2 ccomp | . PUNCT _ 2 punct",
        expected: [5, 1, 2, 2, 1, 1, 1, 0, 0],
    },
    SyntaxFixture {
        name: "coordinated main clauses",
        tokens: "The DET _ 3 det | big ADJ _ 3 amod | dog NOUN _ 4 nsubj | barked VERB VerbForm=Fin 0 root \
                 | and CCONJ _ 8 cc | the DET _ 7 det | cat NOUN _ 8 nsubj | ran VERB VerbForm=Fin 4 conj \
                 | . PUNCT _ 4 punct",
        expected: [8, 1, 2, 2, 2, 0, 0, 0, 1],
    },
    SyntaxFixture {
        name: "coordinated subject",
        tokens: "Tom PROPN _ 4 nsubj | and CCONJ _ 3 cc | Mary PROPN _ 1 conj | read VERB VerbForm=Fin 0 root \
                 | books NOUN _ 4 obj | . PUNCT _ 4 punct",
        expected: [5, 1, 1, 1, 1, 0, 0, 1, 0],
    },
    SyntaxFixture {
        name: "relative clause under a copular root",
        tokens: "The DET _ 2 det | man NOUN _ 8 nsubj | who PRON _ 4 nsubj | lives VERB VerbForm=Fin 2 acl:relcl \
                 | here ADV _ 4 advmod | is AUX VerbForm=Fin 8 cop | a DET _ 8 det | doctor NOUN _ 0 root \
                 | . PUNCT _ 8 punct",
        expected: [8, 1, 2, 2, 1, 1, 1, 0, 1],
    },
    SyntaxFixture {
        name: "fronted adverbial clause and verb-phrase coordination",
        tokens: "When SCONJ _ 3 mark | it PRON _ 3 nsubj | rains VERB VerbForm=Fin 6 advcl | , PUNCT _ 3 punct \
                 | we PRON _ 6 nsubj | stay VERB VerbForm=Fin 0 root | home ADV _ 6 advmod | and CCONJ _ 9 cc \
                 | read VERB _ 6 conj | . PUNCT _ 6 punct",
        expected: [8, 1, 3, 2, 1, 1, 1, 1, 0],
    },
    SyntaxFixture {
        name: "nested complements",
        tokens: "I PRON _ 2 nsubj | think VERB VerbForm=Fin 0 root | you PRON _ 4 nsubj | know VERB VerbForm=Fin 2 ccomp \
                 | what PRON _ 7 obj | he PRON _ 7 nsubj | wants VERB VerbForm=Fin 4 ccomp | . PUNCT _ 2 punct",
        expected: [7, 1, 3, 3, 1, 2, 1, 0, 0],
    },
    SyntaxFixture {
        name: "parataxis with passive auxiliary",
        tokens: "It PRON _ 2 expl | rained VERB VerbForm=Fin 0 root | ; PUNCT _ 2 punct | the DET _ 5 det \
                 | game NOUN _ 7 nsubj:pass | was AUX VerbForm=Fin 7 aux:pass | cancelled VERB VerbForm=Part 2 parataxis \
                 | . PUNCT _ 2 punct",
        expected: [6, 1, 2, 2, 2, 0, 0, 0, 0],
    },
    SyntaxFixture {
        name: "complex nominals",
        tokens: "Two NUM _ 3 nummod | old ADJ _ 3 amod | friends NOUN _ 4 nsubj | met VERB VerbForm=Fin 0 root \
                 | in ADP _ 7 case | the DET _ 7 det | city NOUN _ 4 obl | of ADP _ 9 case | London PROPN _ 7 nmod \
                 | . PUNCT _ 4 punct",
        expected: [9, 1, 1, 1, 1, 0, 0, 0, 2],
    },
    SyntaxFixture {
        name: "non-finite fragment",
        tokens: "To PART _ 3 mark | be AUX VerbForm=Inf 3 cop | happy ADJ _ 0 root | . PUNCT _ 3 punct",
        expected: [3, 1, 1, 0, 0, 0, 0, 0, 0],
    },
    SyntaxFixture {
        name: "conditional with auxiliaries and a coordinated clause",
        tokens: "If SCONJ _ 3 mark | you PRON _ 3 nsubj | come VERB VerbForm=Fin 7 advcl | , PUNCT _ 3 punct \
                 | I PRON _ 7 nsubj | will AUX VerbForm=Fin 7 aux | cook VERB VerbForm=Inf 0 root | and CCONJ _ 11 cc \
                 | you PRON _ 11 nsubj | can AUX VerbForm=Fin 11 aux | clean VERB VerbForm=Inf 7 conj | . PUNCT _ 7 punct",
        expected: [10, 1, 3, 3, 2, 1, 1, 0, 0],
    },
    SyntaxFixture {
        name: "coordinated dependent clauses",
        tokens: "He PRON _ 2 nsubj | left VERB VerbForm=Fin 0 root | because SCONJ _ 6 mark | he PRON _ 6 nsubj \
                 | was AUX VerbForm=Fin 6 cop | tired ADJ _ 2 advcl | and CCONJ _ 10 cc | it PRON _ 10 nsubj \
                 | was AUX VerbForm=Fin 10 cop | late ADJ _ 6 conj | . PUNCT _ 2 punct",
        expected: [10, 1, 3, 3, 1, 2, 1, 0, 0],
    },
];

/// CoNLL-U for one fixture, as a single-sentence document named `doc_id`.
pub fn fixture_conllu(fixture: &SyntaxFixture, doc_id: &str) -> String {
    let mut out = format!("# newdoc id = {doc_id}\n");
    for (i, token) in fixture.tokens.split('|').enumerate() {
        let f: Vec<&str> = token.split_whitespace().collect();
        assert_eq!(f.len(), 5, "fixture {:?} token {token:?}", fixture.name);
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t_\t{}\t{}\t{}\t_\t_\n",
            i + 1,
            f[0],
            f[0],
            f[1],
            f[2],
            f[3],
            f[4]
        ));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn at_least_ten_fixtures_and_well_formed() {
        assert!(SYNTAX_FIXTURES.len() >= 10);
        for f in SYNTAX_FIXTURES {
            let text = fixture_conllu(f, "x");
            let words = text
                .lines()
                .filter(|l| l.contains('\t') && !l.contains("\tPUNCT\t"))
                .count();
            assert_eq!(words, f.expected[0], "{}", f.name);
        }
    }
}
