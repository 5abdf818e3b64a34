# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

VERSION = (0, 1, 0)

# observation window radius, the window is (2R+1)x(2R+1)
OBS_RADIUS = 4

# positions kept per agent, loop detection needs 3
HISTORY_LEN = 8

# more visible neighbors than this switches to the local policy
SWITCH_THRESHOLD = 4

STEP_PENALTY = -0.0001
COLLISION_PENALTY = -0.0002
GOAL_REWARD = 1.0

INSTANCE_RETRIES = 100

GREEDY_EPSILON = 0.15

# default step cap per map size
STEP_CAPS = {
    (20, 20): 256,
    (40, 40): 320,
    (64, 64): 512,
    (80, 80): 640,
}
