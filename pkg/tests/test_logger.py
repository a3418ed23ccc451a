from rdqm.utils.logger import log_execution_time, logger, record_context


def _capture():
    messages = []
    handler_id = logger.add(messages.append, format="{extra[record]}|{message}", level="DEBUG")
    return messages, handler_id


def test_record_context_tags_messages():
    messages, handler_id = _capture()
    try:
        with record_context("identity/k/i/M1/D=0/N=0"):
            logger.info("dentro")
        logger.info("fora")
    finally:
        logger.remove(handler_id)
    assert [m.strip() for m in messages] == ["identity/k/i/M1/D=0/N=0|dentro", "-|fora"]


def test_log_execution_time_reports_failure():
    @log_execution_time
    def cmd_explode():
        raise ValueError("boom")

    messages, handler_id = _capture()
    try:
        try:
            cmd_explode()
        except ValueError:
            pass
    finally:
        logger.remove(handler_id)
    assert messages[0].strip() == "-|▶️ explode"
    assert "interrompido" in messages[-1] and "boom" in messages[-1]
