"""Exception types shared across the package.

Plain ``ValueError`` is used for invalid arguments; the classes here cover
conditions that callers are expected to branch on (CLI exit codes, pipeline
confidence flags).
"""


class DepthOrientError(Exception):
    """Base class for package-specific errors."""


class DegenerateInputError(DepthOrientError):
    """Input carries no usable signal (e.g. no valid pixels in any region)."""


class DegenerateSceneError(DepthOrientError):
    """A rendered scene produced no visible geometry."""


class BehindCameraError(DepthOrientError):
    """A world point projects behind the camera (non-positive depth)."""


class FormatError(DepthOrientError):
    """A depth/image file failed to parse.

    The message names the byte offset of the offending data.
    """

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset
