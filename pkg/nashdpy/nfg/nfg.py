"""
Reader and writer for the payoff version of Gambit's .nfg normal-form format, plus the plain-text strategy-profile
files used to score externally computed profiles. The byte-level grammar is in docs/nfg_format.md.

File order lists one group of N payoffs per pure profile with the FIRST player's action varying fastest
(Fortran order over the action axes). NormalFormGame keeps the first player slowest, so both directions transpose.
"""

import logging
import math
import os

import numpy as np
from nashdpy.game.game import NormalFormGame, StrategyProfile
from nashdpy.game._exceptions import (
    check_game_arg,
    ProfileFileError,
    SimplexError
)
from nashdpy.nfg.nfg_config import (
    INTEGER_PATTERN,
    INTEGER_WRITE_LIMIT,
    NFG_EXTENSION,
    NFG_HEADER,
    NUMBER_PATTERN,
    TOKEN_PATTERN
)
from nashdpy.nfg.nfg_exceptions import (
    NfgArityError,
    NfgImportError,
    NfgSyntaxError,
    NfgUnsupportedError,
    NfgValueError
)

logger = logging.getLogger(__name__)


class _Token(object):
    __slots__ = ('text', 'line', 'column')

    def __init__(self, text, line, column):
        self.text = text
        self.line = line
        self.column = column

    @property
    def is_string(self):
        return len(self.text) >= 2 and self.text.startswith('"') and self.text.endswith('"')

    def __repr__(self):
        return repr(self.text)


def _tokenize(text):
    tokens = []
    line, line_start = 1, 0
    last = 0
    for match in TOKEN_PATTERN.finditer(text):
        start = match.start()
        newlines = text.count('\n', last, start)
        if newlines:
            line += newlines
            line_start = text.rfind('\n', last, start) + 1
        token = _Token(match.group(), line, start - line_start + 1)
        if token.text == '"':
            raise NfgSyntaxError(token.line, token.column, 'a closing quote', 'end of file')
        tokens.append(token)
        # quoted strings may span lines
        inner = match.group().count('\n')
        if inner:
            line += inner
            line_start = text.rfind('\n', start, match.end()) + 1
        last = match.end()
    return tokens


def _unquote(text):
    return text[1:-1].replace('\\"', '"').replace('\\\\', '\\')


def _quote(text):
    return '"' + str(text).replace('\\', '\\\\').replace('"', '\\"') + '"'


class _Parser(object):
    def __init__(self, text):
        self._text = text
        self._tokens = _tokenize(text)
        self._pos = 0

    def _end_position(self):
        lines = self._text.split('\n')
        return len(lines), len(lines[-1]) + 1

    def _peek(self):
        return self._tokens[self._pos] if self._pos < len(self._tokens) else None

    def _next(self, expected):
        token = self._peek()
        if token is None:
            line, column = self._end_position()
            raise NfgSyntaxError(line, column, expected, 'end of file')
        self._pos += 1
        return token

    def _expect(self, literal):
        token = self._next(repr(literal))
        if token.text != literal:
            raise NfgSyntaxError(token.line, token.column, repr(literal), repr(token.text))
        return token

    def _string(self, what):
        token = self._next(what)
        if not token.is_string:
            raise NfgSyntaxError(token.line, token.column, what, repr(token.text))
        return _unquote(token.text)

    def parse(self):
        for literal in NFG_HEADER:
            self._expect(literal)
        title = self._string('a quoted title')

        self._expect('{')
        names = []
        while self._peek() is not None and self._peek().is_string:
            names.append(self._string('a quoted player name'))
        self._expect('}')
        if not names:
            token = self._tokens[self._pos - 1]
            raise NfgSyntaxError(token.line, token.column, 'at least one quoted player name', repr('}'))

        self._expect('{')
        counts = []
        while self._peek() is not None and self._peek().text != '}':
            token = self._next('an action count')
            if token.text == '{':
                raise NfgUnsupportedError('strategy names', token.line, token.column)
            if not INTEGER_PATTERN.match(token.text) or int(token.text) < 1:
                raise NfgSyntaxError(token.line, token.column, 'a positive integer action count', repr(token.text))
            counts.append(int(token.text))
        closing = self._expect('}')
        if len(counts) != len(names):
            raise NfgSyntaxError(closing.line, closing.column, f'{len(names)} action counts (one per player)', f'{len(counts)}')

        token = self._peek()
        if token is not None and token.text == '{':
            raise NfgUnsupportedError('outcome', token.line, token.column)
        if token is not None and token.is_string:
            raise NfgUnsupportedError('comment', token.line, token.column)

        payoffs = []
        for token in self._tokens[self._pos:]:
            if not NUMBER_PATTERN.match(token.text):
                raise NfgValueError(token.text, token.line, token.column)
            payoffs.append(float(token.text))
        self._pos = len(self._tokens)

        num_profiles = int(np.prod(counts, dtype=np.int64))
        if len(payoffs) != len(names) * num_profiles:
            raise NfgArityError(len(names), num_profiles, len(payoffs))
        return NfgDocument(title, names, counts, payoffs)


class NfgDocument(object):
    def __init__(self, title: str, player_names, action_counts, payoffs):
        """
        The contents of a payoff-version .nfg file, payoffs kept in file order
        :param title: str                   -The quoted game title
        :param player_names: list[str]      -One name per player
        :param action_counts: list[int]     -Positive action count per player
        :param payoffs: list[float]         -N * prod(|A_i|) payoffs, grouped per profile, first player fastest
        """
        self.title = str(title)
        self.player_names = [str(i) for i in player_names]
        self.action_counts = [int(i) for i in action_counts]
        self.payoffs = np.asarray(payoffs, dtype=float).ravel()

        num_profiles = int(np.prod(self.action_counts, dtype=np.int64))
        if len(self.player_names) != len(self.action_counts):
            raise NfgImportError(f'{len(self.player_names)} player names but {len(self.action_counts)} action counts')
        if any(i < 1 for i in self.action_counts):
            raise NfgImportError(f'action counts {self.action_counts} must be positive')
        if self.payoffs.size != len(self.action_counts) * num_profiles:
            raise NfgArityError(len(self.action_counts), num_profiles, self.payoffs.size)

    def __repr__(self):
        return f'<NfgDocument {self.title!r} | {len(self.player_names)} players | {self.action_counts} actions>'

    @classmethod
    def from_game(cls, game):
        game = check_game_arg(game, 'NfgDocument.from_game')
        counts = tuple(game.action_counts)
        per_player = np.stack([tensor.ravel(order='F') for tensor in game.tensors])
        return cls(game.name, game.player_names, counts, per_player.T.ravel())

    def to_game(self):
        n = len(self.action_counts)
        counts = tuple(self.action_counts)
        grouped = self.payoffs.reshape(-1, n)
        payoffs = [grouped[:, i].reshape(counts, order='F').ravel() for i in range(n)]
        return NormalFormGame(counts, payoffs, name=self.title, player_names=self.player_names)

    def to_text(self):
        names = ' '.join(_quote(i) for i in self.player_names)
        counts = ' '.join(str(i) for i in self.action_counts)
        header = f'NFG 1 R {_quote(self.title)} {{ {names} }} {{ {counts} }}'
        return f'{header}\n\n{" ".join(format_payoff(i) for i in self.payoffs)}\n'


def format_payoff(value):
    """
    Shortest decimal text that parses back to the same double; integral values print without a decimal point.
    Negative zero keeps its sign.
    """
    value = float(value)
    if value == 0.0 and math.copysign(1.0, value) < 0:
        return repr(value)
    if value.is_integer() and abs(value) < INTEGER_WRITE_LIMIT:
        return str(int(value))
    return repr(value)


def read_nfg(text: str):
    return _Parser(text).parse()


def parse_nfg(text: str):
    """
    Parses payoff-version .nfg text into a NormalFormGame
    """
    document = read_nfg(text)
    logger.debug('parsed %s', document)
    return document.to_game()


def serialize_nfg(game):
    """
    Writes a NormalFormGame as payoff-version .nfg text. Output is deterministic for a given game.
    """
    return NfgDocument.from_game(game).to_text()


def _check_path(filename, must_exist=True):
    if must_exist and not os.path.isfile(filename):
        raise NfgImportError('not found', filename)
    if not str(filename).lower().endswith(NFG_EXTENSION):
        raise NfgImportError('not ext', filename)
    return filename


def load_nfg(filename):
    with open(_check_path(filename), 'r', encoding='utf-8') as nfg_file:
        try:
            text = nfg_file.read()
        except UnicodeDecodeError as err:
            raise NfgImportError('not utf8', filename) from err
    return parse_nfg(text)


def save_nfg(game, filename):
    text = serialize_nfg(game)
    with open(_check_path(filename, must_exist=False), 'w', encoding='utf-8', newline='\n') as nfg_file:
        nfg_file.write(text)
    logger.info('wrote %s to %s', game, filename)
    return filename


def parse_profile(text: str, game, filename='<text>'):
    """
    Parses a strategy-profile file: one non-empty line per player, whitespace-separated probabilities.
    Lines starting with '#' are skipped.
    """
    game = check_game_arg(game, 'parse_profile')
    lines = [i.strip() for i in text.splitlines()]
    rows = [i for i in lines if i and not i.startswith('#')]
    if len(rows) != game.num_players:
        raise ProfileFileError(filename, f'{len(rows)} strategy lines for a {game.num_players} player game')
    vecs = []
    for player, (row, count) in enumerate(zip(rows, game.action_counts)):
        tokens = row.split()
        if len(tokens) != count:
            raise ProfileFileError(filename, f'player {player} has {count} actions but {len(tokens)} probabilities')
        bad = [i for i in tokens if not NUMBER_PATTERN.match(i)]
        if bad:
            raise ProfileFileError(filename, f'non-numeric probability [{bad[0]}] for player {player}')
        vecs.append([float(i) for i in tokens])
    try:
        return StrategyProfile(vecs)
    except SimplexError as err:
        raise ProfileFileError(filename, str(err).strip()) from err


def load_profile(filename, game):
    if not os.path.isfile(filename):
        raise ProfileFileError(filename, 'file not found')
    with open(filename, 'r', encoding='utf-8') as profile_file:
        try:
            text = profile_file.read()
        except UnicodeDecodeError as err:
            raise ProfileFileError(filename, 'file is not UTF-8 text') from err
    return parse_profile(text, game, filename=filename)
