from blinker import Namespace

_signals = Namespace()

case_checked = _signals.signal('case_checked')
tolerance_breached = _signals.signal('tolerance_breached')
configuration_measured = _signals.signal('configuration_measured')
