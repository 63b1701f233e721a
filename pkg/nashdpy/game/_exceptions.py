import numpy as np
from nashdpy.game._config import (
    ALGORITHMS,
    GAME_CLASSES,
    MAX_GAME_ENTRIES,
    REPORT_MODES,
    SIMPLEX_TOL
)


def cannot_set(affected_cls_name, attr_name):
    raise ReadOnlyAttributeError(affected_cls_name, attr_name)


def check_game_arg(game_arg, caller_name):
    if game_arg.__class__.__name__ == 'NormalFormGame':
        return game_arg
    else:
        raise GameArgError(game_arg, caller_name)


def check_profile_arg(profile_arg, caller_name):
    if profile_arg.__class__.__name__ == 'StrategyProfile':
        return profile_arg
    else:
        raise ProfileArgError(profile_arg, caller_name)


def check_player_index(player, num_players):
    if isinstance(player, (int, np.integer)) and not isinstance(player, bool) and 0 <= player < num_players:
        return int(player)
    else:
        raise PlayerIndexError(player, num_players)


def check_pure_profile(actions, action_counts):
    actions = tuple(actions)
    if len(actions) != len(action_counts):
        raise ShapeError(f'pure profile has {len(actions)} actions but the game has {len(action_counts)} players')
    for player, (action, count) in enumerate(zip(actions, action_counts)):
        if not isinstance(action, (int, np.integer)) or isinstance(action, bool) or not 0 <= action < count:
            raise ActionIndexError(player, action, count)
    return tuple(int(i) for i in actions)


def check_profile_shape(profile, action_counts):
    counts = tuple(len(i) for i in profile.strategies)
    if counts != tuple(action_counts):
        raise ShapeError(f'profile action counts {counts} do not match game action counts {tuple(action_counts)}')
    return profile


def check_simplex(vector, player):
    """
    Returns the vector divided by its sum when it is nonnegative and sums to 1 within SIMPLEX_TOL
    """
    vec = np.asarray(vector, dtype=float)
    if vec.ndim != 1 or vec.size == 0:
        raise SimplexError(player, vector, 'is not a non-empty vector')
    if not np.all(np.isfinite(vec)):
        raise SimplexError(player, vector, 'has non-finite entries')
    if np.any(vec < -SIMPLEX_TOL):
        raise SimplexError(player, vector, 'has negative entries')
    total = vec.sum()
    if abs(total - 1.0) > SIMPLEX_TOL:
        raise SimplexError(player, vector, f'sums to {total!r}')
    return np.clip(vec, 0.0, None) / np.clip(vec, 0.0, None).sum()


def check_capacity(num_players, num_profiles):
    entries = num_players * num_profiles
    if entries > MAX_GAME_ENTRIES:
        raise CapacityError(num_players, num_profiles)
    return entries


def check_game_class(class_name):
    cls = str(class_name).lower().replace('-', '_')
    if cls in GAME_CLASSES:
        return cls
    raise GameClassError(class_name)


def check_algorithm(algorithm):
    alg = str(algorithm).lower().replace('-', '_')
    if alg in ALGORITHMS:
        return alg
    raise AlgorithmError(algorithm)


def check_report_mode(report):
    if report in REPORT_MODES:
        return report
    raise ConfigError('report', report, f'must be one of {", ".join(REPORT_MODES)}')


def get_error_message(error_val, valid_codes: dict, label: str):
    valids = '\n'.join([f'{key} - {value}' for key, value in valid_codes.items()])
    return f"""\n\n[{error_val}] is not a valid {label}. Valid {label}s are...\n{valids}"""


class ActionCountError(Exception):
    def __init__(self, class_name, actions, minimum):
        super(ActionCountError, self).__init__(f'\n\nIncorrect Arg [{actions}] - {class_name} games need at least {minimum} actions per player')


class ActionIndexError(IndexError):
    def __init__(self, player, action, count):
        super(ActionIndexError, self).__init__(f'\n\nIncorrect Arg [{action}] - Player {player} has actions 0 to {count - 1}')


class AlgorithmError(Exception):
    def __init__(self, algorithm):
        super(AlgorithmError, self).__init__(get_error_message(algorithm, ALGORITHMS, 'algorithm'))


class CapacityError(Exception):
    def __init__(self, num_players, num_profiles):
        super(CapacityError, self).__init__(
            f'\n\nGame too large - {num_players} players x {num_profiles} pure profiles = {num_players * num_profiles} payoff entries, '
            f'the limit is {MAX_GAME_ENTRIES}')


class ConfigError(Exception):
    def __init__(self, field, value, reason):
        super(ConfigError, self).__init__(f'\n\nIncorrect Arg [{value}] - {field} {reason}')


class GameArgError(Exception):
    def __init__(self, arg, caller_name):
        super(GameArgError, self).__init__(f'\n\nIncorrect Arg [{arg}] - Game Argument for {caller_name} needs to be NormalFormGame')


class GameClassError(Exception):
    def __init__(self, class_name):
        super(GameClassError, self).__init__(get_error_message(class_name, GAME_CLASSES, 'game class'))


class PayoffError(ValueError):
    def __init__(self, reason):
        super(PayoffError, self).__init__(f'\n\nInvalid payoffs - {reason}')


class PlayerCountError(Exception):
    def __init__(self, class_name, players, low, high=None):
        bounds = f'{low} to {high}' if high is not None else f'at least {low}'
        super(PlayerCountError, self).__init__(f'\n\nIncorrect Arg [{players}] - {class_name} games need {bounds} players')


class PlayerIndexError(IndexError):
    def __init__(self, player, num_players):
        super(PlayerIndexError, self).__init__(f'\n\nIncorrect Arg [{player}] - Player index must be 0 to {num_players - 1}')


class ProfileArgError(Exception):
    def __init__(self, arg, caller_name):
        super(ProfileArgError, self).__init__(f'\n\nIncorrect Arg [{arg}] - Profile Argument for {caller_name} needs to be StrategyProfile')


class ProfileFileError(Exception):
    def __init__(self, filename, reason):
        super(ProfileFileError, self).__init__(f'\n\nCould not read strategy profile [{filename}] - {reason}')


class ReadOnlyAttributeError(Exception):
    def __init__(self, affected_cls_name, attr_name):
        super(ReadOnlyAttributeError, self).__init__(f'\n\nCannot modify attribute [{attr_name}] for class {affected_cls_name}, as it is READONLY')


class ShapeError(ValueError):
    def __init__(self, reason):
        super(ShapeError, self).__init__(f'\n\nShape mismatch - {reason}')


class SimplexError(ValueError):
    def __init__(self, player, vector, reason):
        super(SimplexError, self).__init__(f'\n\nIncorrect Arg {list(np.ravel(vector))} - Strategy for player {player} {reason}')
