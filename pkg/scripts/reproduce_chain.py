#!/usr/bin/env python3
"""Print synchronization plans for a few chain sizes.

Shows the schedule, overhead and the contrast between accumulated
end-to-end error bounds (linear in the group count) and the local error
triple that actually governs detection at any relay.
"""

import sys

from pncsync.chain import ChainConfig, effective_detection_errors, make_plan, serialize_plan


def main():
    local = (0.1, 0.02, 0.001)
    for n in (3, 5, 6, 21):
        plan = make_plan(ChainConfig(num_nodes=n, bg_sync_time=1.0, period=1000.0,
                                     local_errors=local))
        print(f"=== chain of {n} nodes ===")
        print(serialize_plan(plan))
        print(f"detection at relay 2 sees errors {effective_detection_errors(plan, 2)} "
              f"(same at every relay, any N)\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
