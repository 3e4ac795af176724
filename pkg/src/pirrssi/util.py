#!/usr/bin/env python3

"""Supporting utilities.

Classes
-------
.. autosummary::
    ProgressBar
    OptionReader

Routines
--------
.. autosummary::
    read_param
    parse_range
    humansize
    humantime
    config_files
    progress_enabled

----

"""

import configparser
import os
import re
import sys
import time


def read_param(params, key, default):
    """Read and return a parameter from a dict.

    If the key `key` is absent from the dict `params`, return the
    default value `default` instead.

    Parameters
    ----------
    params : dict or None
        A dict containing parameters; ``None`` is treated as empty.
    key : str
        Name of the parameter, i.e., its corresponding key in `params`.
    default
        Default value for the parameter, if `key` is absent from `params`.

    Returns
    -------
    value

    Examples
    --------
    >>> read_param({'budget': 10}, 'budget', 2000000)
    10
    >>> read_param(None, 'samples', 3)
    3

    """

    if not isinstance(key, str):
        raise ValueError('invalid parameter name %s' % str(key))
    if params is None:
        return default
    return params[key] if key in params else default


_RANGE = re.compile(r'^\s*([0-9]+)\s*(?:-\s*([0-9]+)\s*)?$')


def parse_range(spec):
    """Parse an integer range such as ``'4'``, ``'3-6'`` or ``'3,5-7'``.

    Returns
    -------
    list of int
        Sorted, without duplicates.

    Raises
    ------
    ValueError
        If `spec` is malformed or a range is decreasing.

    Examples
    --------
    >>> parse_range('3-6')
    [3, 4, 5, 6]
    >>> parse_range('1,4,2-3')
    [1, 2, 3, 4]

    """

    values = set()
    for piece in str(spec).split(','):
        match = _RANGE.match(piece)
        if not match:
            raise ValueError("malformed range '%s'" % spec)
        low = int(match.group(1))
        high = int(match.group(2)) if match.group(2) is not None else low
        if high < low:
            raise ValueError("decreasing range '%s'" % piece.strip())
        values.update(range(low, high + 1))
    return sorted(values)


def humansize(size):
    """Return a human readable string of the given size in bytes.

    Examples
    --------
    >>> humansize(49)
    '49B'
    >>> humansize(2048)
    '2.00KiB'

    """

    multiplier = 1024.0
    if size < multiplier:
        return "%dB" % size
    for unit in ['Ki', 'Mi', 'Gi', 'Ti']:
        size /= multiplier
        if size < multiplier or unit == 'Ti':
            break
    if size < 10:
        return "%.2f%sB" % (size, unit)
    elif size < 100:
        return "%.1f%sB" % (size, unit)
    return "%.0f%sB" % (size, unit)


def humantime(seconds):
    """Format a nonnegative duration as ``H:MM:SS``.

    Examples
    --------
    >>> humantime(3725)
    '1:02:05'

    """

    if seconds < 0:
        raise ValueError("seconds=%f is negative, "
                         "expected nonnegative value" % seconds)
    seconds = int(round(seconds))
    return "%d:%02d:%02d" % (seconds // 3600, (seconds // 60) % 60,
                             seconds % 60)


# 0: done/total, e.g. 12/36
# 1: elapsed time, e.g. 0:00:04
# 2: the bar, in the form "=====>   "
# 3: percent done
# 4: label
_FORMAT_STRING = '\r{4} {0:>13s} {1} [{2}] {3:>3s}%'


class ProgressBar(object):
    """Progress bar counting units of work on stderr.

    Call `update` as units complete and `finish` exactly once at the end;
    any call after `finish` raises ``RuntimeError``.

    Parameters
    ----------
    total : int
        Number of work units.
    label : str, optional
        Short prefix for each line.
    interval : float, optional
        Refresh interval in seconds. Default is 1.0.
    stream : file, optional
        Defaults to ``sys.stderr``.

    Attributes
    ----------
    total : int
    done : int
    start : float
    elapsed : float
        Only available after `finish`.

    """

    def __init__(self, total, label='progress', interval=1.0, stream=None):
        self.total = max(total, 1)
        self.done = 0
        self.label = label
        self.start = time.time()
        self.interval = interval
        self._stream = stream if stream is not None else sys.stderr
        self._last = self.start
        self.__finished = False
        try:
            ncol, _ = os.get_terminal_size()
        except OSError:
            ncol = 80
        self._barlen = max(ncol - 40 - len(label), 10)

    def update(self, units=1):
        """Register completed units; redraws at most once per interval."""
        if self.__finished:
            raise RuntimeError('operation on finished progress bar')
        self.done = min(self.done + units, self.total)
        now = time.time()
        if now - self._last >= self.interval:
            self._last = now
            self._write(now)

    def finish(self):
        """Draw the completed bar and end the line."""
        # pylint: disable=attribute-defined-outside-init
        if self.__finished:
            raise RuntimeError('operation on finished progress bar')
        self.__finished = True
        self.done = self.total
        now = time.time()
        self.elapsed = now - self.start
        self._write(now)
        self._stream.write("\n")
        self._stream.flush()

    def _write(self, now):
        fraction = self.done / self.total
        length = int(round(self._barlen * fraction))
        if length == 0:
            bar_s = ' ' * self._barlen
        else:
            bar_s = '=' * (length - 1) + '>' + ' ' * (self._barlen - length)
        self._stream.write(_FORMAT_STRING.format(
            '%d/%d' % (self.done, self.total), humantime(now - self.start),
            bar_s, str(int(fraction * 100)), self.label))
        self._stream.flush()


def progress_enabled(verbose, stream=None):
    """Resolve a ``--verbose {auto,on,off}`` setting.

    ``auto`` means on exactly when `stream` (stderr by default) is a TTY.

    """

    if verbose == 'on':
        return True
    if verbose == 'off':
        return False
    if verbose != 'auto':
        raise ValueError("verbose must be one of auto, on, off; got '%s'" %
                         verbose)
    stream = stream if stream is not None else sys.stderr
    return hasattr(stream, 'isatty') and stream.isatty()


def config_files(appname):
    """Candidate configuration files for an application.

    ``$XDG_CONFIG_HOME/<appname>/<appname>.conf``, falling back to
    ``~/.config`` when the variable is unset.

    """

    config_home = os.getenv('XDG_CONFIG_HOME',
                            os.path.expanduser('~/.config'))
    return [os.path.join(config_home, appname, '%s.conf' % appname)]


class OptionReader(object):
    """Read options from a list of fallbacks.

    The value of an option is determined in the order of CLI argument,
    environment variable, config file, default value, and at last
    ``None``.

    Parameters
    ----------
    cli_args : argparse.Namespace, optional
        Parsed CLI arguments; attributes set to ``None`` count as absent.
    config_files : str or list, optional
        Path(s) to configuration files.
    section : str, optional
        Config file section to read from (not ``DEFAULT``).
    defaults : dict, optional
        Default values.
    environ : dict, optional
        Maps option names to environment variable names, e.g.
        ``{'budget': 'PIR_RSSI_BUDGET'}``.

    Raises
    ------
    configparser.Error
        If a configuration file is malformed.

    """

    def __init__(self, cli_args=None, config_files=None, section=None,
                 defaults=None, environ=None):
        if section == 'DEFAULT':
            raise ValueError("section name DEFAULT is not allowed")

        if cli_args is not None:
            self._cli_opts = dict((k, v) for k, v in vars(cli_args).items()
                                  if v is not None)
        else:
            self._cli_opts = {}

        self._env_opts = {}
        for name, variable in (environ or {}).items():
            value = os.getenv(variable)
            if value is not None and value.strip():
                self._env_opts[name] = value.strip()

        self._cfg_opts = {}
        if config_files is not None and section is not None:
            config = configparser.ConfigParser()
            config.read(config_files)
            if config.has_section(section):
                self._cfg_opts = dict(config.items(section))

        self._default_opts = defaults if defaults is not None else {}

    def cli_opt(self, name):
        """CLI value of an option, or ``None``."""
        return self._cli_opts.get(name)

    @staticmethod
    def _convert(rawopt, opttype):
        # pylint: disable=too-many-return-statements
        if opttype is None or opttype is str:
            return rawopt
        elif opttype is int:
            return int(rawopt)
        elif opttype is float:
            return float(rawopt)
        elif opttype is bool:
            rawopt_lower = rawopt.lower()
            if rawopt_lower in {'yes', 'on', '1'}:
                return True
            elif rawopt_lower in {'no', 'off', '0'}:
                return False
            raise ValueError("not a boolean: %s" % rawopt)
        raise ValueError("unrecognized opttype %s" % str(opttype))

    def env_opt(self, name, opttype=None):
        """Environment value of an option converted to `opttype`, or ``None``.

        Raises
        ------
        ValueError
            If the raw value cannot be converted.

        """

        if name not in self._env_opts:
            return None
        return self._convert(self._env_opts[name], opttype)

    def cfg_opt(self, name, opttype=None):
        """Config file value of an option converted to `opttype`, or ``None``.

        Parameters
        ----------
        name : str
        opttype : {None, str, int, float, bool}
            ``bool`` accepts yes/on/1 and no/off/0, case insensitive.

        Raises
        ------
        ValueError
            If the raw value cannot be converted, or `opttype` is not
            supported.

        """

        if name not in self._cfg_opts:
            return None
        return self._convert(self._cfg_opts[name], opttype)

    def default_opt(self, name):
        """Default value of an option, or ``None``."""
        return self._default_opts.get(name)

    def opt(self, name, opttype=None):
        """Value of an option: CLI, environment, config file, default."""
        if name in self._cli_opts:
            return self._cli_opts[name]
        elif name in self._env_opts:
            return self.env_opt(name, opttype)
        elif name in self._cfg_opts:
            return self.cfg_opt(name, opttype)
        return self._default_opts.get(name)
