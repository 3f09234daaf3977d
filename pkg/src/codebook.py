from misc import quinary, nquinary, ncombinations, call_name, UnassignedCombination, UnmappableCharacter, \
    ReservedSymbol
from collections import namedtuple
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
import csv, io, string
import numpy as np

# Printable characters in codebook order
alphanumerics = string.ascii_uppercase + string.ascii_lowercase + string.digits
specials = "`~!@#$%^&*()_+-={}|[]\\:';\"<>?,./"
printables = alphanumerics + specials

# Typographic folding applied before tokenization
normalization_table = {
    "\u2019" : "'", "\u2018" : "'",
    "\u201c" : '"', "\u201d" : '"',
    "\u2013" : "-", "\u2014" : "-",
    "\u2026" : "...",
    "\u00a0" : " ",
    "\t" : " ",
    "\r" : "\n",
}
replacement_char = "?"

representable = frozenset(printables + " \n")


class QuinaryDelta(int):
    """ Intensity offset of a single channel, restricted to the quinary set

        :param integer value: Offset in {-2, -1, 0, 1, 2}
    """
    def __new__(cls, value):
        if (isinstance(value, bool) or not isinstance(value, (int, np.integer)) or not int(value) in quinary):
            error_message = "Quinary offset must be one of -2, -1, 0, 1, 2!"
            error_vars = f"value = {value!r}"
            raise ValueError (f"( {cls.__name__}.{call_name()} ) {error_message} ( {error_vars} )")
        return super().__new__(cls, int(value))

    def __repr__(self):
        return f"{int(self):+d}"


class PerturbationTriplet(namedtuple("PerturbationTriplet", ["dr", "dg", "db"])):
    """ (dR, dG, dB) offsets carried by one RGB pixel

        :param integer dr: Offset of the red channel
        :param integer dg: Offset of the green channel
        :param integer db: Offset of the blue channel
    """
    __slots__ = ()

    def __new__(cls, dr, dg, db):
        return super().__new__(cls, QuinaryDelta(dr), QuinaryDelta(dg), QuinaryDelta(db))

    @classmethod
    def from_index(cls, index):
        """ Triplet at a lexicographic index in [0, 124]

            :param integer index: Lexicographic index
        """
        if not (0 <= index < ncombinations):
            error_message = "Lexicographic index out of range!"
            error_vars = f"index = {index}, ncombinations = {ncombinations}"
            raise ValueError (f"( {cls.__name__}.{call_name()} ) {error_message} ( {error_vars} )")
        dr, rest = divmod(index, nquinary ** 2)
        dg, db = divmod(rest, nquinary)
        return cls(dr - 2, dg - 2, db - 2)

    @property
    def index(self):
        return (self.dr + 2) * nquinary ** 2 + (self.dg + 2) * nquinary + (self.db + 2)

    @property
    def magnitude(self):
        return abs(self.dr) + abs(self.dg) + abs(self.db)

    def __repr__(self):
        return f"({int(self.dr)}, {int(self.dg)}, {int(self.db)})"


@dataclass(frozen=True)
class Symbol:
    """ One embeddable unit of text

        :param string kind: printable, space, newline, parabreak or terminator
        :param string char: Character of a printable symbol
    """
    kind: str
    char: str = None

    kinds = ("printable", "space", "newline", "parabreak", "terminator")

    def __post_init__(self):
        if not (self.kind in self.kinds):
            error_message = "Invalid symbol kind!"
            error_vars = f"kind = {self.kind}"
            raise ValueError (f"( Symbol.{call_name()} ) {error_message} ( {error_vars} )")
        if (self.kind == "printable"):
            if (self.char == None or not self.char in printables):
                error_message = "Printable symbol must be a single alphabet character!"
                error_vars = f"char = {self.char!r}"
                raise ValueError (f"( Symbol.{call_name()} ) {error_message} ( {error_vars} )")
        elif (self.char != None):
            error_message = "Only printable symbols carry a character!"
            error_vars = f"kind = {self.kind}, char = {self.char!r}"
            raise ValueError (f"( Symbol.{call_name()} ) {error_message} ( {error_vars} )")

    @classmethod
    def printable(cls, char):
        return cls("printable", char)

    @classmethod
    def parse(cls, text):
        """ Symbol spelled by a string: one printable character, " ", "\\n", "\\n\\n" or "\\x00"

            :param string text: Spelling of the symbol
        """
        if (text in _spelled):
            return _spelled[text]
        error_message = "String does not spell an alphabet symbol!"
        error_vars = f"text = {text!r}"
        raise UnmappableCharacter (f"( Symbol.{call_name()} ) {error_message} ( {error_vars} )", \
            position=0, codepoint=text)

    @property
    def text(self):
        """ Characters the symbol stands for in decoded text
        """
        if (self.kind == "printable"):
            return self.char
        return {"space" : " ", "newline" : "\n", "parabreak" : "\n\n", "terminator" : ""}[self.kind]

    @property
    def label(self):
        """ Spelling used in the codebook dump
        """
        if (self.kind == "printable"):
            return self.char
        return {"space" : "SP", "newline" : "\\n", "parabreak" : "\\n\\n", "terminator" : "NUL"}[self.kind]

    def __repr__(self):
        return f"Symbol({self.label})"


SPACE = Symbol("space")
NEWLINE = Symbol("newline")
PARA_BREAK = Symbol("parabreak")
TERMINATOR = Symbol("terminator")

alphabet = tuple([Symbol.printable(char) for char in printables] + [SPACE, NEWLINE, PARA_BREAK, TERMINATOR])

_spelled = {sym.char : sym for sym in alphabet if sym.kind == "printable"}
_spelled.update({" " : SPACE, "\n" : NEWLINE, "\n\n" : PARA_BREAK, "\x00" : TERMINATOR})


@dataclass
class NormalizationLog:
    """ Record of every codepoint normalize_text had to touch

        :param list substitutions: (position, original codepoint, replacement string)
        :param list rejected: (position, codepoint) replaced in lossy mode
    """
    substitutions: list = field(default_factory=list)
    rejected: list = field(default_factory=list)

    def to_dict(self):
        return {"substitutions" : [list(item) for item in self.substitutions], \
            "rejected" : [list(item) for item in self.rejected]}


class Codebook(object):
    """ Bijection between the 98 alphabet symbols and the first 98 quinary triplets

        :param tuple symbols: Symbols in codebook order
    """
    def __init__(self, symbols=alphabet):
        if (len(set(symbols)) != len(symbols) or len(symbols) > ncombinations):
            error_message = "Codebook symbols must be distinct and fit in the quinary combinations!"
            error_vars = f"len(symbols) = {len(symbols)}, distinct = {len(set(symbols))}"
            raise ValueError (f"( {self.__class__.__name__}.{call_name()} ) {error_message} ( {error_vars} )")

        self.symbols = tuple(symbols)
        self.nsym = len(self.symbols)

        forward = {sym : PerturbationTriplet.from_index(index) for index, sym in enumerate(self.symbols)}
        self.forward = MappingProxyType(forward)
        self.reverse = MappingProxyType({triplet : sym for sym, triplet in forward.items()})

        # Row k holds the deltas of the symbol at index k
        self.deltas = np.array([tuple(forward[sym]) for sym in self.symbols], dtype=np.int16)
        self.deltas.flags.writeable = False

        self.terminator_index = self.symbols.index(TERMINATOR)

    def symbol_to_triplet(self, sym):
        """ Triplet assigned to a symbol

            :param sym: Symbol, or its spelling
            :type sym: Symbol or string
        """
        if (isinstance(sym, str)):
            sym = Symbol.parse(sym)
        return self.forward[sym]

    def triplet_to_symbol(self, triplet):
        """ Symbol assigned to a triplet

            :param triplet: Triplet to look up
            :type triplet: PerturbationTriplet or tuple
        """
        triplet = PerturbationTriplet(*triplet)
        if (not triplet in self.reverse):
            error_message = "Triplet is one of the shelved combinations!"
            error_vars = f"triplet = {triplet!r}, index = {triplet.index}"
            raise UnassignedCombination (f"( {self.__class__.__name__}.{call_name()} ) {error_message} ( {error_vars} )", \
                triplet=tuple(triplet), pixel=None)
        return self.reverse[triplet]

    def symbol_indices(self, symbols):
        """ Codebook indices of a symbol sequence as an integer array

            :param list symbols: Symbol sequence
        """
        position = {sym : index for index, sym in enumerate(self.symbols)}
        return np.fromiter((position[sym] for sym in symbols), dtype=np.int64, count=len(symbols))

    def dump_csv(self):
        """ Codebook table as CSV text with header symbol,dr,dg,db,index
        """
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["symbol", "dr", "dg", "db", "index"])
        for sym in self.symbols:
            triplet = self.forward[sym]
            writer.writerow([sym.label, int(triplet.dr), int(triplet.dg), int(triplet.db), triplet.index])
        return buf.getvalue()


@lru_cache(maxsize=None)
def build_codebook():
    """ Canonical codebook: A-Z, a-z, 0-9, the 32 specials, Space, Newline, ParaBreak, Terminator
        assigned to lexicographic triplet indices 0 to 97
    """
    return Codebook(alphabet)

def symbol_to_triplet(cb, sym):
    return cb.symbol_to_triplet(sym)

def triplet_to_symbol(cb, triplet):
    return cb.triplet_to_symbol(triplet)

def normalize_text(raw, strict=True):
    """ Fold typographic characters into the alphabet

        :param string raw: Input text
        :param boolean strict: Raise on characters with no folding instead of replacing them by '?'
    """
    log = NormalizationLog()
    out = []
    pos = 0
    nchar = len(raw)
    while (pos < nchar):
        char = raw[pos]
        if (char in representable):
            out.append(char)
        elif (char == "\r" and pos + 1 < nchar and raw[pos + 1] == "\n"):
            # CRLF pair folds to a single newline
            log.substitutions.append((pos, char, "\n"))
            out.append("\n")
            pos += 1
        elif (char in normalization_table):
            log.substitutions.append((pos, char, normalization_table[char]))
            out.append(normalization_table[char])
        elif (strict):
            error_message = "Character has no alphabet mapping!"
            error_vars = f"position = {pos}, codepoint = U+{ord(char):04X} {char!r}"
            raise UnmappableCharacter (f"( {call_name()} ) {error_message} ( {error_vars} )", \
                position=pos, codepoint=char)
        else:
            log.rejected.append((pos, char))
            out.append(replacement_char)
        pos += 1

    return "".join(out), log

def tokenize(normalized):
    """ Split normalized text into symbols; each "\\n\\n" pair is one paragraph break

        :param string normalized: Text made of alphabet characters only
    """
    symbols = []
    pos = 0
    nchar = len(normalized)
    while (pos < nchar):
        char = normalized[pos]
        if (char == "\n" and pos + 1 < nchar and normalized[pos + 1] == "\n"):
            symbols.append(PARA_BREAK)
            pos += 2
            continue
        if (not char in representable):
            error_message = "Text is not normalized!"
            error_vars = f"position = {pos}, codepoint = U+{ord(char):04X}"
            raise UnmappableCharacter (f"( {call_name()} ) {error_message} ( {error_vars} )", \
                position=pos, codepoint=char)
        symbols.append(_spelled[char])
        pos += 1

    return symbols

def detokenize(symbols):
    """ Inverse of tokenize

        :param list symbols: Symbol sequence without terminator
    """
    if (TERMINATOR in symbols):
        error_message = "Terminator has no text form!"
        error_vars = f"position = {symbols.index(TERMINATOR)}"
        raise ReservedSymbol (f"( {call_name()} ) {error_message} ( {error_vars} )", \
            position=symbols.index(TERMINATOR))
    return "".join([sym.text for sym in symbols])
