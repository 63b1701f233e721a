from nashdpy.nfg.nfg_config import (
    ARITY,
    FILE_NOT_FOUND,
    INCORRECT_EXTENSION,
    NOT_UTF8,
    SYNTAX,
    UNSUPPORTED,
    VALUE,
    VARIANTS
)


class NfgImportError(Exception):
    messages = {
        'not found': FILE_NOT_FOUND,
        'not ext': INCORRECT_EXTENSION,
        'not utf8': NOT_UTF8
    }

    def __init__(self, err_string, filename=None):
        if err_string in self.messages:
            super(NfgImportError, self).__init__(self.messages[err_string].format(filename))
        else:
            super(NfgImportError, self).__init__(err_string)


class NfgSyntaxError(NfgImportError):
    def __init__(self, line, column, expected, found):
        self.line = line
        self.column = column
        super(NfgSyntaxError, self).__init__(SYNTAX.format(line, column, expected, found))


class NfgArityError(NfgImportError):
    def __init__(self, num_players, num_profiles, found):
        self.expected = num_players * num_profiles
        self.found = found
        super(NfgArityError, self).__init__(ARITY.format(num_players, num_profiles, self.expected, found))


class NfgValueError(NfgImportError):
    def __init__(self, token, line, column):
        self.line = line
        self.column = column
        super(NfgValueError, self).__init__(VALUE.format(token, line, column))


class NfgUnsupportedError(NfgImportError):
    def __init__(self, variant, line, column):
        self.variant = variant
        super(NfgUnsupportedError, self).__init__(UNSUPPORTED.format(line, column, VARIANTS[variant]))
