import re


NFG_EXTENSION = '.nfg'

NFG_HEADER = ('NFG', '1', 'R')

# quoted string (backslash escapes), a brace, a bare word, or a stray quote that never closes
TOKEN_PATTERN = re.compile(r'"(?:[^"\\]|\\.)*"|[{}]|[^\s{}"]+|"')

NUMBER_PATTERN = re.compile(r'^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$')

INTEGER_PATTERN = re.compile(r'^\d+$')

# integral payoffs below this magnitude are written without a decimal point
INTEGER_WRITE_LIMIT = 2 ** 53


# Exception messages
FILE_NOT_FOUND = """
[{}] could not be located, check the file path and try again.
"""

INCORRECT_EXTENSION = """
[{}] has the incorrect file type. Acceptable file types are...

.nfg
"""

NOT_UTF8 = """
[{}] could not be decoded as UTF-8 text. .nfg files are plain text.
"""

SYNTAX = """
Syntax error at line {}, column {}: expected {}, found {}
The payoff version of the .nfg format reads...

NFG 1 R "title" {{ "Player 1" "Player 2" ... }} {{ |A_1| |A_2| ... }}
<N payoffs per pure profile, first player's action varying fastest>
"""

ARITY = """
Payoff count mismatch: the header declares {} players and {} pure profiles, so {} payoffs are required, but {} were found.
"""

VALUE = """
Non-numeric payoff [{}] at line {}, column {}. Payoffs must be integers or decimals.
"""

UNSUPPORTED = """
Unsupported .nfg variant at line {}, column {}: {}
Only the payoff version (payoffs listed directly after the action counts) can be imported.
"""

VARIANTS = {
    'outcome': 'the outcome version lists outcomes in braces after the action counts',
    'comment': 'a comment string follows the action counts',
    'strategy names': 'strategies are given by name instead of by count'
}
