"""Canonical prompt text blocks for the three captioning stages.

These blocks are the stable contract with the chat backend: goldens in the
test suite pin them byte-for-byte, so any edit here is a template version
bump. Named placeholders are filled by :mod:`motioncap.prompts`.
"""

TEMPLATE_VERSION = "1"

PREAMBLE = """\
### Task ###
Your task is to create instructions to give to the robot.
Input is a sequence of robot motion frame images, robot joint angles, and robot end-effector position information.
Output is a caption to each image based on what the robot arm is doing.

### Joint/Pose ###
The robot arm has seven degrees of freedom.
The joint angle information consists of eight key elements: seven joint angles and one representing the opening of the robot gripper. For example, in the sequence [1.1, 0.5, 0.7, 0.8, 0.9, 0.6, 0.4, -1.0], the first seven values (1.1 to 0.4) correspond to the joint angles, while the last value (-1.0) indicates the gripper's opening state.
There are six pieces of information for fingertip position and posture.
For example, in the case of [0.4, 0.6, 0.3, 0.9, 0.2, -1.1], 0.4, 0.6, 0.3 represent x, y, z coordinates, which are position, and 0.9, 0.2, -1.1 represent roll, pitch, and yaw, which are orientation.

### Guidelines ###
1. Describe the caption simply.
2. The robot arm is doing its task.
3. In the caption field, please provide "caption" only.
4. When creating captions, summaries, or generating instructions, be sure to refer to the joint angles and robot hand position information."""

SCENE_INSTRUCTION = """\
# Process 1
Describe the robot arm's motion at each step based on a series of images and the corresponding joint angle and hand position data. Each series consists of {series_length} images."""

SUMMARY_INSTRUCTION = """\
# Process 2
Based on each of the described robotic arm actions, summarize the overall work situation. This summary should aim to provide an understanding of the purpose of the robotic arm and the sequence of tasks it is performing."""

INSTRUCTION_INSTRUCTION = """\
# Process 3
Based on the summary of the task, generate a single, specific instruction for the robotic arm. This directive should clearly and precisely describe the action required to complete the task. Keep the instruction brief and focused{state_clause}."""

# Appended to the final-instruction stage only when robot state is part of
# the run; without state the clause would ask for information the model
# never saw.
STATE_CLAUSE = ", incorporating joint angle and hand position information"

_NUMBER_WORDS = {
    1: "one", 2: "two", 3: "three", 4: "four", 5: "five",
    6: "six", 7: "seven", 8: "eight", 9: "nine", 10: "ten",
}


def count_word(n: int) -> str:
    """Spell out small counts so the scene instruction reads naturally."""
    return _NUMBER_WORDS.get(n, str(n))
