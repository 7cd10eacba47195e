class ElrError(ValueError):
    """Error carrying a stable machine-readable ``kind`` tag.

    The tag is what callers (and the CLI) dispatch on; the message is for humans.
    """

    def __init__(self, kind: str, message: str = "", **context):
        self.kind = kind
        self.context = context
        text = kind if not message else f"{kind}: {message}"
        super().__init__(text)
