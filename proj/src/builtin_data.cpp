#include "builtin_data.hpp"

namespace moodbench::detail {

// 127 entries. Includes the classic function words plus the contractions the
// tokenizer preserves (it keeps letter-flanked apostrophes).
const char* const kStopwordsText = R"(a
an
the
in
of
and
or
but
if
then
else
when
while
at
by
for
with
about
against
between
into
through
during
before
after
above
below
to
from
up
down
out
on
off
over
under
again
further
once
here
there
all
any
both
each
few
more
most
other
some
such
only
own
same
so
than
too
very
just
because
until
i
me
my
mine
myself
we
us
our
ours
ourselves
you
your
yours
yourself
he
him
his
himself
she
her
hers
herself
it
its
itself
they
them
their
theirs
themselves
what
which
who
whom
this
that
these
those
am
is
are
was
were
be
been
being
have
has
had
having
do
does
did
doing
will
would
should
can
could
not
no
as
i'm
don't
that's
it's
)";

// Regular high-frequency forms first, then the irregular-forms exceptions.
const char* const kLemmaDictText =
    "# bundled lemma dictionary: surface<TAB>tag<TAB>lemma\n"
    "#\n"
    "# regular forms\n"
    "running\tVERB\trun\n"
    "runs\tVERB\trun\n"
    "feeling\tVERB\tfeel\n"
    "feelings\tNOUN\tfeeling\n"
    "crying\tVERB\tcry\n"
    "cried\tVERB\tcry\n"
    "cries\tVERB\tcry\n"
    "dying\tVERB\tdie\n"
    "lying\tVERB\tlie\n"
    "tired\tVERB\ttire\n"
    "living\tVERB\tlive\n"
    "losing\tVERB\tlose\n"
    "sleeping\tVERB\tsleep\n"
    "studies\tNOUN\tstudy\n"
    "stories\tNOUN\tstory\n"
    "#\n"
    "# irregular forms (exceptions)\n"
    "am\tVERB\tbe\n"
    "is\tVERB\tbe\n"
    "are\tVERB\tbe\n"
    "was\tVERB\tbe\n"
    "were\tVERB\tbe\n"
    "been\tVERB\tbe\n"
    "being\tVERB\tbe\n"
    "has\tVERB\thave\n"
    "had\tVERB\thave\n"
    "did\tVERB\tdo\n"
    "done\tVERB\tdo\n"
    "went\tVERB\tgo\n"
    "gone\tVERB\tgo\n"
    "made\tVERB\tmake\n"
    "said\tVERB\tsay\n"
    "got\tVERB\tget\n"
    "gotten\tVERB\tget\n"
    "saw\tVERB\tsee\n"
    "seen\tVERB\tsee\n"
    "came\tVERB\tcome\n"
    "took\tVERB\ttake\n"
    "taken\tVERB\ttake\n"
    "thought\tVERB\tthink\n"
    "felt\tVERB\tfeel\n"
    "found\tVERB\tfind\n"
    "gave\tVERB\tgive\n"
    "given\tVERB\tgive\n"
    "knew\tVERB\tknow\n"
    "known\tVERB\tknow\n"
    "told\tVERB\ttell\n"
    "became\tVERB\tbecome\n"
    "left\tVERB\tleave\n"
    "kept\tVERB\tkeep\n"
    "meant\tVERB\tmean\n"
    "ran\tVERB\trun\n"
    "spoke\tVERB\tspeak\n"
    "spoken\tVERB\tspeak\n"
    "woke\tVERB\twake\n"
    "slept\tVERB\tsleep\n"
    "lost\tVERB\tlose\n"
    "broke\tVERB\tbreak\n"
    "broken\tVERB\tbreak\n"
    "children\tNOUN\tchild\n"
    "men\tNOUN\tman\n"
    "women\tNOUN\twoman\n"
    "feet\tNOUN\tfoot\n"
    "teeth\tNOUN\ttooth\n"
    "mice\tNOUN\tmouse\n"
    "people\tNOUN\tperson\n"
    "lives\tNOUN\tlife\n"
    "selves\tNOUN\tself\n"
    "better\tADJ\tgood\n"
    "best\tADJ\tgood\n"
    "worse\tADJ\tbad\n"
    "worst\tADJ\tbad\n";

// Seven seed keywords first, then the extension section. Editable copy lives
// at data/lexicon_depression.txt; entries are lemma-normalized on load.
const char* const kLexiconText = R"(# depression keyword lexicon
# seed keywords
sad
tired
hopeless
unhappy
worthless
lonely
miserable
# extension
depressed
depression
depressing
anxious
anxiety
suicidal
crying
cried
exhausted
empty
numb
helpless
grief
despair
insomnia
overwhelmed
panic
ashamed
guilt
guilty
drained
heartbroken
)";

const std::set<std::string>& closed_class_other() {
    static const std::set<std::string> table = {
        "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us",
        "them", "my", "your", "his", "its", "our", "their", "mine", "yours",
        "hers", "ours", "theirs", "myself", "yourself", "himself", "herself",
        "itself", "ourselves", "yourselves", "themselves", "this", "that",
        "these", "those", "a", "an", "the", "some", "any", "each", "every",
        "no", "all", "both", "few", "many", "much", "more", "most", "other",
        "another", "such", "what", "which", "who", "whom", "whose", "when",
        "where", "why", "how", "in", "of", "on", "at", "by", "for", "with",
        "from", "to", "into", "onto", "over", "under", "above", "below",
        "between", "among", "through", "during", "before", "after", "against",
        "about", "around", "up", "down", "out", "off", "again", "once",
        "here", "there", "then", "than", "as", "if", "because", "while",
        "until", "unless", "and", "or", "but", "nor", "so", "not",
        "i'm", "i've", "i'll", "i'd", "you're", "it's", "that's", "don't",
        "can't", "won't", "didn't", "isn't", "wasn't", "couldn't", "wouldn't",
        "shouldn't",
    };
    return table;
}

const std::set<std::string>& closed_class_verbs() {
    static const std::set<std::string> table = {
        // auxiliaries and modals
        "am", "is", "are", "was", "were", "be", "been", "being", "do", "does",
        "did", "doing", "have", "has", "had", "having", "will", "would",
        "shall", "should", "can", "could", "may", "might", "must",
        // frequent irregular forms, mirroring the bundled dictionary
        "went", "gone", "made", "said", "got", "gotten", "saw", "seen",
        "came", "took", "taken", "thought", "felt", "found", "gave", "given",
        "knew", "known", "told", "became", "left", "kept", "meant", "ran",
        "spoke", "spoken", "woke", "slept", "lost", "broke", "broken", "done",
    };
    return table;
}

}  // namespace moodbench::detail
